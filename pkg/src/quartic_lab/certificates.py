"""Built-in operator/certificate triples and their verification reports."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional

from .arith import MultiPoly, RatFunc
from .grammar import TripleSpec, load_triples, parse_operator, parse_poly, parse_ratfunc
from .holonomic import (
    Certificate,
    CertificateNotFound,
    CertifiedIntegrand,
    DiffOp,
    Recurrence,
    VerificationReport,
    certificate_solve,
    ode_to_recurrence,
    verify_certificate,
)

DATA_FILES = {2: "quartic.ini", 3: "general_n.ini"}


@dataclass(frozen=True)
class Triple:
    theorem: int
    variant: str
    integrand: CertifiedIntegrand
    operator: DiffOp
    certificate: Certificate
    spec: TripleSpec


def build_triple(theorem: int, spec: TripleSpec) -> Triple:
    marker, coeffs = parse_operator(spec.operator)
    if marker != "D_a":
        raise ValueError("built-in operators act by D_a")
    F = CertifiedIntegrand(parse_poly(spec.kernel), x_exponent=parse_poly(spec.x_exponent))
    return Triple(theorem, spec.name, F, DiffOp(coeffs), Certificate(parse_ratfunc(spec.certificate)), spec)


@lru_cache(maxsize=None)
def variants(theorem: int) -> Dict[str, Triple]:
    if theorem not in DATA_FILES:
        raise ValueError(f"no built-in certificates for theorem {theorem}")
    return {name: build_triple(theorem, s) for name, s in load_triples(DATA_FILES[theorem]).items()}


def builtin_triple(theorem: int, variant: str) -> Triple:
    table = variants(theorem)
    if variant not in table:
        raise ValueError(f"theorem {theorem} has variants {sorted(table)}, not {variant!r}")
    return table[variant]


@lru_cache(maxsize=None)
def series_recurrence() -> Recurrence:
    """Recurrence for the coefficients of the x^(2n) + n a x^n + 1 integral in a."""
    return ode_to_recurrence(builtin_triple(3, "corrected").operator)


def corrupted(triple: Triple) -> Triple:
    """Same triple with x added to the certificate numerator (a test hook)."""
    R = triple.certificate.R
    bad = Certificate(RatFunc(R.num + MultiPoly.var("x"), R.den))
    return Triple(triple.theorem, triple.variant + "+corrupt", triple.integrand, triple.operator, bad, triple.spec)


@dataclass
class TripleResult:
    theorem: int
    variant: str
    report: VerificationReport
    printed: str
    typos: str
    note: str

    @property
    def verified(self) -> bool:
        return self.report.verified


def check_triple(triple: Triple, seed: Optional[int] = None) -> TripleResult:
    rep = verify_certificate(triple.operator, triple.certificate, triple.integrand, seed=seed)
    s = triple.spec
    return TripleResult(triple.theorem, triple.variant, rep, s.printed, s.typos, s.note)


@dataclass
class Resolution:
    """Outcome of checking every configured variant of one built-in identity."""

    theorem: int
    results: List[TripleResult]
    diagnostics: Dict[str, str] = field(default_factory=dict)

    @property
    def verifying(self) -> List[str]:
        return [r.variant for r in self.results if r.verified]

    @property
    def unique(self) -> bool:
        return len(self.verifying) == 1


def resolve(theorem: int, seed: Optional[int] = None, corrupt: bool = False) -> Resolution:
    results = []
    for triple in variants(theorem).values():
        results.append(check_triple(corrupted(triple) if corrupt else triple, seed))
    res = Resolution(theorem, results)
    if theorem == 3:
        res.diagnostics = general_n_diagnostics()
    return res


def general_n_diagnostics(m: int = 1, n: int = 3, bound: int = 4) -> Dict[str, str]:
    """Certificate searches at fixed (m, n) locating where the printed proof breaks."""
    out = {}
    printed = builtin_triple(3, "printed")
    fixed_kernel = builtin_triple(3, "kernel")
    corrected = builtin_triple(3, "corrected")
    probes = {
        "printed operator, printed kernel z^2+2az+1": (printed.operator, printed.integrand),
        "printed operator, kernel z^2+naz+1": (fixed_kernel.operator, fixed_kernel.integrand),
        "corrected operator, kernel z^2+naz+1": (corrected.operator, corrected.integrand),
    }
    inst = {"m": m, "u": Fraction(1, n)}
    for label, (op, F) in probes.items():
        key = f"certificate_solve[{label}; m={m}, n={n}, degree<={bound}]"
        try:
            cert = certificate_solve(op, F, m, n, bound)
        except CertificateNotFound:
            out[key] = "no certificate of the form x*P(x)/Q"
            continue
        rep = verify_certificate(op.subs(inst), cert, F.subs(inst))
        out[key] = f"found R = {cert.R} (verified: {rep.verified})"
    return out
