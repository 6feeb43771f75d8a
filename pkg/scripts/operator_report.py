#!/usr/bin/env python3
"""Thue-Morse operator checks: identities, the vanishing/factor correspondence,
nilpotency indices of homogeneous multiples, and the growth profile.

Usage: python scripts/operator_report.py [--N 4096] [--maxlen 12]
"""

import argparse
import itertools

from wordalg import rowen
from wordalg.cli import emit_report


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--N", type=int, default=4096)
    parser.add_argument("--horizon", type=int, default=100_000)
    parser.add_argument("--maxlen", type=int, default=12)
    parser.add_argument("--fdeg", type=int, default=3, help="max degree of the 0/1 elements tested")
    args = parser.parse_args()

    scan = rowen.correspondence_scan(args.maxlen, args.N, args.horizon)
    print(emit_report({
        "correspondence_checked": str(scan.checked),
        "correspondence_mismatches": str(len(scan.mismatches)),
    }))

    stable = 0
    total = 0
    worst = 0
    for degree in range(1, args.fdeg + 1):
        words_of_degree = ["".join(t) for t in itertools.product("ab", repeat=degree)]
        for mask in range(1, 2 ** len(words_of_degree)):
            element = {w: 1 for i, w in enumerate(words_of_degree) if mask >> i & 1}
            result = rowen.nilpotency_index(element, "a", args.N // 4)
            total += 1
            stable += result.stable
            worst = max(worst, result.index)
    print(emit_report({
        "nilpotency_elements_tested": str(total),
        "nilpotency_stable": str(stable),
        "nilpotency_max_index": str(worst),
    }))

    profile = rowen.growth_profile((64, 128, 256), args.horizon)
    print(emit_report(profile.to_record()))


if __name__ == "__main__":
    main()
