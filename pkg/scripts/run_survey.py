"""Survey the conductor family ell = m^2 + 3m + 9 and certify the towers.

Prints one row per sweep candidate (conductor, primality, class number,
certification verdict) followed by the singular-series summary comparing
the empirical prime count against its asymptotic estimate.
"""

import argparse
import time

from towercert.errors import CertificationRejected
from towercert.hlsearch import (
    CONDUCTOR_POLY,
    empirical_prime_count,
    hl_constant,
    search_shanks_candidates,
)
from towercert.tower import KnownInfiniteRegistry, certify_cyclotomic


def parse_args(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--m-max", type=int, default=120, metavar="N",
                        help="sweep m = 1..N (default 120)")
    parser.add_argument("--prime-bound", type=int, default=10**6, metavar="B",
                        help="prime bound for the singular-series product")
    parser.add_argument("--count-below", type=int, default=10**6, metavar="X",
                        help="cutoff for the empirical prime count")
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    registry = KnownInfiniteRegistry()
    candidates = search_shanks_candidates(args.m_max)

    print(f"{'m':>4}  {'ell':>8}  {'ell prime':>9}  {'h':>5}  verdict")
    started = time.perf_counter()
    certified = []
    for cand in candidates:
        if not cand.is_prime_ell:
            print(f"{cand.m:>4}  {cand.ell:>8}  {'no':>9}  {'-':>5}  skipped")
            continue
        try:
            cert = certify_cyclotomic(cand.m, registry)
        except CertificationRejected as exc:
            print(f"{cand.m:>4}  {cand.ell:>8}  {'yes':>9}  {'-':>5}  "
                  f"rejected ({', '.join(exc.reasons)})")
            continue
        verdict = "infinite tower" if cert.certified else "h < 18"
        if cert.certified:
            certified.append(cert.ell)
        print(f"{cand.m:>4}  {cand.ell:>8}  {'yes':>9}  {cert.h:>5}  {verdict}")
    elapsed = time.perf_counter() - started

    print()
    print(f"certified conductors: {certified}")
    print(f"sweep time: {elapsed:.2f}s over {len(candidates)} candidates")

    constant = hl_constant(args.prime_bound)
    report = empirical_prime_count(CONDUCTOR_POLY, args.count_below, constant.constant)
    print()
    print(f"singular-series constant (p <= {args.prime_bound}): {constant.constant:.15f}")
    print(f"conductor primes below {args.count_below}: {report.count} "
          f"(estimate {report.estimate:.2f}, ratio {report.ratio:.3f})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
