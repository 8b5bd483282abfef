"""Check every configured variant of the general-n certificate and print a summary.

Also runs the linear certificate solver on a few (operator, kernel) pairs at
fixed small parameters to show which combinations admit any certificate.
"""
import argparse

from quartic_lab.certificates import resolve, general_n_diagnostics


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--n", type=int, default=3)
    args = ap.parse_args()

    res = resolve(3, seed=args.seed)
    for r in res.results:
        status = "VERIFIED" if r.verified else "fails"
        print(f"{r.variant:10s} {status:9s} residual numerator terms: {len(r.report.residual.num.terms)}")
        print(f"           typos assumed: {r.typos}")
    print("verifying:", ", ".join(res.verifying) or "none")
    print()
    for key, val in general_n_diagnostics(m=args.m, n=args.n).items():
        print(f"{key}\n    {val}")


if __name__ == "__main__":
    main()
