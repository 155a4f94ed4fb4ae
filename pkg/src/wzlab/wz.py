"""The telescoping certificate engine.

The certified pair is

    F(n,k) = P(n,k) * H(n,k),      P = 6n^2 - 5n + 1 - 4nk + 2k,
    G(n,k) = Q(n,k) * H(n,k),      Q = 4(-2n+1)n^3 / (3+2k-2n)^2,

over the kernel H(n,k) = (-1/2-k)_n^2 (-1/2)_n 4^n / n!^3, and the claim is
the telescoping relation F(n,k+1) - F(n,k) = G(n+1,k) - G(n,k) on the
nonnegative integer grid.  Dividing by H(n,k) turns that into an identity of
rational functions in (n,k),

    P(n,k+1) s_k(n,k) - P(n,k) = Q(n+1,k) s_n(n,k) - Q(n,k),

where s_n = H(n+1,k)/H(n,k) and s_k = H(n,k+1)/H(n,k) are the kernel shift
quotients.  The symbolic check clears denominators and tests the resulting
polynomial for identical vanishing; the numeric check evaluates both sides
exactly on an integer grid.  Certificates are plain data (four rational
functions) and are loadable from JSON so other pairs can be screened with
the same engine.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path

from .poly import Poly2, RatFun2
from .sequences import pochhammer
from .series import MAIN, partial_sum_exact

BUILTIN_KERNEL = "half-integer-cubed"


class ShiftRatioMismatch(ValueError):
    """A certificate's shift quotient disagrees with the kernel it claims."""


class NotIdentity(ValueError):
    """The certificate's normalized identity has a nonzero residual."""

    def __init__(self, residual: Poly2):
        super().__init__(f"telescoping identity fails; residual {residual!r}")
        self.residual = residual


class CertificateFormatError(ValueError):
    """A certificate file could not be parsed into four rational functions."""


# ---------------------------------------------------------------------------
# exact evaluators

def kernel_value(n: int, k: int) -> Fraction:
    """H(n,k) = (-1/2-k)_n^2 (-1/2)_n 4^n / n!^3.  Never zero on the grid."""
    return (
        pochhammer(Fraction(-1, 2) - k, n) ** 2
        * pochhammer(Fraction(-1, 2), n)
        * Fraction(4) ** n
        / Fraction(factorial(n)) ** 3
    )


def eval_F(n: int, k: int) -> Fraction:
    return (6 * n * n - 5 * n + 1 - 4 * n * k + 2 * k) * kernel_value(n, k)


def eval_G(n: int, k: int) -> Fraction:
    # 3 + 2k - 2n is odd, hence never zero at integer arguments.
    return Fraction(4 * (1 - 2 * n) * n**3, (3 + 2 * k - 2 * n) ** 2) * kernel_value(n, k)


def _shift_n_value(n: int, k: int) -> Fraction:
    """H(n+1,k)/H(n,k) = 4 (n-k-1/2)^2 (n-1/2) / (n+1)^3."""
    return Fraction((2 * n - 2 * k - 1) ** 2 * (2 * n - 1), 2 * (n + 1) ** 3)


def _shift_k_value(n: int, k: int) -> Fraction:
    """H(n,k+1)/H(n,k) = ((k+3/2) / (k+3/2-n))^2."""
    return Fraction((2 * k + 3) ** 2, (2 * k + 3 - 2 * n) ** 2)


# ---------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class Certificate:
    """Multipliers P, Q and kernel shift quotients, all RatFun2 in (n, k)."""

    name: str
    P: RatFun2
    Q: RatFun2
    shift_n: RatFun2
    shift_k: RatFun2
    kernel: str = BUILTIN_KERNEL


def builtin_certificate() -> Certificate:
    n = Poly2.var_n()
    k = Poly2.var_k()
    one = Poly2.constant(1)
    half = Fraction(1, 2)

    p_poly = (
        n * n * Poly2.constant(6)
        - n.scale(5)
        + one
        - (n * k).scale(4)
        + k.scale(2)
    )
    q_num = (n**3).scale(4) - (n**4).scale(8)
    q_den = (Poly2.constant(3) + k.scale(2) - n.scale(2)) ** 2
    sn_num = ((n - k - Poly2.constant(half)) ** 2 * (n - Poly2.constant(half))).scale(4)
    sn_den = (n + one) ** 3
    sk_num = (k + Poly2.constant(Fraction(3, 2))) ** 2
    sk_den = (k + Poly2.constant(Fraction(3, 2)) - n) ** 2

    return Certificate(
        name="builtin-main",
        P=RatFun2(p_poly),
        Q=RatFun2(q_num, q_den),
        shift_n=RatFun2(sn_num, sn_den),
        shift_k=RatFun2(sk_num, sk_den),
    )


def validate_shift_ratios(cert: Certificate, grid: int = 10) -> None:
    """Cross-check the certificate's shift quotients before trusting them.

    Any certificate must satisfy the mixed-shift consistency condition
    s_n(n,k+1) s_k(n,k) = s_k(n+1,k) s_n(n,k) (both sides are
    H(n+1,k+1)/H(n,k)).  A certificate for the built-in kernel is also
    compared against direct kernel evaluations on the grid.
    """
    for n in range(grid + 1):
        for k in range(grid + 1):
            try:
                lhs = cert.shift_n.eval(n, k + 1) * cert.shift_k.eval(n, k)
                rhs = cert.shift_k.eval(n + 1, k) * cert.shift_n.eval(n, k)
            except ZeroDivisionError as exc:
                raise ShiftRatioMismatch(
                    f"shift quotient singular at (n,k)=({n},{k}): {exc}"
                ) from exc
            if lhs != rhs:
                raise ShiftRatioMismatch(
                    f"shift quotients inconsistent at (n,k)=({n},{k})"
                )
    if cert.kernel == BUILTIN_KERNEL:
        for n in range(grid + 1):
            for k in range(grid + 1):
                if cert.shift_n.eval(n, k) != _shift_n_value(n, k):
                    raise ShiftRatioMismatch(
                        f"shift_n disagrees with kernel at (n,k)=({n},{k})"
                    )
                if cert.shift_k.eval(n, k) != _shift_k_value(n, k):
                    raise ShiftRatioMismatch(
                        f"shift_k disagrees with kernel at (n,k)=({n},{k})"
                    )


def symbolic_residual(cert: Certificate) -> Poly2:
    """Numerator polynomial of P(n,k+1)s_k - P - Q(n+1,k)s_n + Q, scaled to
    integer coefficients.  Identically zero iff the pair telescopes."""
    diff = (
        cert.P.shift(0, 1) * cert.shift_k
        - cert.P
        - cert.Q.shift(1, 0) * cert.shift_n
        + cert.Q
    )
    return diff.num.with_integer_coefficients()


def verify_pair_symbolic(
    cert: Certificate | None = None, *, grid: int = 10, strict: bool = False
) -> bool:
    """Decide the telescoping identity symbolically.

    Raises ShiftRatioMismatch if the certificate's shift quotients fail
    validation.  On a nonzero residual returns False, or raises NotIdentity
    carrying the residual polynomial when strict=True.
    """
    cert = cert or builtin_certificate()
    validate_shift_ratios(cert, grid=grid)
    residual = symbolic_residual(cert)
    if residual.is_zero:
        return True
    if strict:
        raise NotIdentity(residual)
    return False


# ---------------------------------------------------------------------------
# numeric verification

def _kernel_grid(n_max: int, k_max: int) -> list[list[Fraction]]:
    """H on [0..n_max] x [0..k_max] by multiplicative row recursion."""
    grid = [[Fraction(1)] * (k_max + 1)]
    for n in range(n_max):
        prev = grid[n]
        grid.append([prev[k] * _shift_n_value(n, k) for k in range(k_max + 1)])
    return grid


def numeric_mismatch(n_max: int, k_max: int) -> tuple[int, int] | None:
    """First (n,k) with F(n,k+1)-F(n,k) != G(n+1,k)-G(n,k), else None."""
    H = _kernel_grid(n_max + 1, k_max + 1)

    def F(n: int, k: int) -> Fraction:
        return (6 * n * n - 5 * n + 1 - 4 * n * k + 2 * k) * H[n][k]

    def G(n: int, k: int) -> Fraction:
        return Fraction(4 * (1 - 2 * n) * n**3, (3 + 2 * k - 2 * n) ** 2) * H[n][k]

    for n in range(n_max + 1):
        for k in range(k_max + 1):
            if F(n, k + 1) - F(n, k) != G(n + 1, k) - G(n, k):
                return (n, k)
    return None


def verify_pair_numeric(n_max: int = 50, k_max: int = 50) -> bool:
    """Exact telescoping identity for all 0 <= n <= n_max, 0 <= k <= k_max."""
    return numeric_mismatch(n_max, k_max) is None


def cert_numeric_mismatch(
    cert: Certificate, n_max: int, k_max: int
) -> tuple[int, int] | None:
    """Numeric grid check for an arbitrary certificate.

    The kernel is reconstructed from the certificate's own shift quotients
    with H(0,0) = 1, so this is meaningful for any pair, not just the
    built-in one.  A singular evaluation counts as a mismatch at that point.
    """
    try:
        H = [[Fraction(1)] * (k_max + 2)]
        for k in range(k_max + 1):
            H[0][k + 1] = H[0][k] * cert.shift_k.eval(0, k)
        for n in range(n_max + 1):
            row = [H[n][k] * cert.shift_n.eval(n, k) for k in range(k_max + 2)]
            H.append(row)
    except ZeroDivisionError:
        return (0, 0)

    def F(n: int, k: int) -> Fraction:
        return cert.P.eval(n, k) * H[n][k]

    def G(n: int, k: int) -> Fraction:
        return cert.Q.eval(n, k) * H[n][k]

    for n in range(n_max + 1):
        for k in range(k_max + 1):
            try:
                ok = F(n, k + 1) - F(n, k) == G(n + 1, k) - G(n, k)
            except ZeroDivisionError:
                return (n, k)
            if not ok:
                return (n, k)
    return None


# ---------------------------------------------------------------------------
# telescoping decompositions of the main partial sums

def telescoping_decomposition_1(p: int) -> tuple[Fraction, Fraction, Fraction]:
    """(A, B, C) with sum_{k<=(p+1)/2} main_term(k) = -A + B - C, where
    A = F((p+1)/2, 0), B = sum_{k=0}^{(p-3)/2} G((p+1)/2, k) and
    C = sum_{n=0}^{(p-1)/2} F(n, (p-1)/2).  Exact for every odd p > 3."""
    if p <= 3 or p % 2 == 0:
        raise ValueError("decomposition needs an odd p > 3")
    m = (p + 1) // 2
    half = (p - 1) // 2

    A = eval_F(m, 0)

    # B: fixed row n = m, k marching right via the k-shift quotient.
    h = kernel_value(m, 0)
    B = Fraction(0)
    for k in range(half):  # k = 0 .. (p-3)/2
        B += Fraction(4 * (1 - 2 * m) * m**3, (3 + 2 * k - 2 * m) ** 2) * h
        h *= _shift_k_value(m, k)

    # C: fixed column k = half, n marching up via the n-shift quotient.
    h = kernel_value(0, half)
    C = Fraction(0)
    for n in range(half + 1):  # n = 0 .. (p-1)/2
        C += (6 * n * n - 5 * n + 1 - 4 * n * half + 2 * half) * h
        h *= _shift_n_value(n, half)

    return A, B, C


def telescoping_decomposition_2(p: int) -> tuple[Fraction, Fraction]:
    """(B, C) with sum_{k<=p-1} main_term(k) = B - C, where
    B = sum_{k=0}^{(p-3)/2} G(p, k) and C = sum_{n=0}^{p-1} F(n, (p-1)/2)."""
    if p <= 3 or p % 2 == 0:
        raise ValueError("decomposition needs an odd p > 3")
    half = (p - 1) // 2

    h = kernel_value(p, 0)
    B = Fraction(0)
    for k in range(half):
        B += Fraction(4 * (1 - 2 * p) * p**3, (3 + 2 * k - 2 * p) ** 2) * h
        h *= _shift_k_value(p, k)

    h = kernel_value(0, half)
    C = Fraction(0)
    for n in range(p):
        C += (6 * n * n - 5 * n + 1 - 4 * n * half + 2 * half) * h
        h *= _shift_n_value(n, half)

    return B, C


def decomposition_1_holds(p: int) -> bool:
    A, B, C = telescoping_decomposition_1(p)
    return -A + B - C == partial_sum_exact(MAIN, (p + 1) // 2)


def decomposition_2_holds(p: int) -> bool:
    B, C = telescoping_decomposition_2(p)
    return B - C == partial_sum_exact(MAIN, p - 1)


# ---------------------------------------------------------------------------
# certificate files (JSON)

def _poly_from_json(obj, where: str) -> Poly2:
    if not isinstance(obj, list):
        raise CertificateFormatError(f"{where}: expected a list of monomials")
    terms = []
    for entry in obj:
        if not (isinstance(entry, list) and len(entry) == 3):
            raise CertificateFormatError(f"{where}: monomial must be [dn, dk, coef]")
        dn, dk, coef = entry
        if not (isinstance(dn, int) and isinstance(dk, int) and dn >= 0 and dk >= 0):
            raise CertificateFormatError(f"{where}: degrees must be nonnegative ints")
        try:
            c = Fraction(str(coef))
        except (ValueError, ZeroDivisionError) as exc:
            raise CertificateFormatError(f"{where}: bad coefficient {coef!r}") from exc
        terms.append((dn, dk, c))
    return Poly2.from_terms(terms)


def _ratfun_from_json(obj, where: str) -> RatFun2:
    if not isinstance(obj, dict) or set(obj) - {"num", "den"}:
        raise CertificateFormatError(f"{where}: expected {{'num': ..., 'den': ...}}")
    num = _poly_from_json(obj.get("num", []), f"{where}.num")
    den = _poly_from_json(obj.get("den", [[0, 0, "1"]]), f"{where}.den")
    if den.is_zero:
        raise CertificateFormatError(f"{where}: zero denominator polynomial")
    return RatFun2(num, den)


def certificate_to_json(cert: Certificate) -> str:
    """Serialize with one `[deg_n, deg_k, "coeff"]` monomial per entry."""

    def poly(p: Poly2) -> str:
        entries = ", ".join(
            f'[{dn}, {dk}, {json.dumps(str(c))}]' for dn, dk, c in (
                (dn, dk, c) for (dn, dk), c in sorted(p.monomials.items())
            )
        )
        return f"[{entries}]"

    def fun(f: RatFun2) -> str:
        return f'{{"num": {poly(f.num)}, "den": {poly(f.den)}}}'

    lines = [
        "{",
        f'  "name": {json.dumps(cert.name)},',
        f'  "kernel": {json.dumps(cert.kernel)},',
        f'  "P": {fun(cert.P)},',
        f'  "Q": {fun(cert.Q)},',
        f'  "shift_n": {fun(cert.shift_n)},',
        f'  "shift_k": {fun(cert.shift_k)}',
        "}",
    ]
    return "\n".join(lines) + "\n"


def load_certificate(path: str | Path) -> Certificate:
    try:
        payload = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CertificateFormatError(f"cannot read certificate file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"certificate is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    missing = {"P", "Q", "shift_n", "shift_k"} - set(payload)
    if missing:
        raise CertificateFormatError(f"certificate missing fields: {sorted(missing)}")
    return Certificate(
        name=str(payload.get("name", "unnamed")),
        P=_ratfun_from_json(payload["P"], "P"),
        Q=_ratfun_from_json(payload["Q"], "Q"),
        shift_n=_ratfun_from_json(payload["shift_n"], "shift_n"),
        shift_k=_ratfun_from_json(payload["shift_k"], "shift_k"),
        kernel=str(payload.get("kernel", BUILTIN_KERNEL)),
    )


def save_certificate(cert: Certificate, path: str | Path) -> None:
    Path(path).write_text(certificate_to_json(cert))


# ---------------------------------------------------------------------------
# mutation harness (used by tests and the acceptance suite)

def single_coefficient_mutants(cert: Certificate | None = None) -> list[Certificate]:
    """All certificates obtained by bumping one coefficient of P or Q by 1.

    Every one of these must fail both the symbolic and the numeric check;
    the suite treats surviving mutants as an engine bug.
    """
    cert = cert or builtin_certificate()
    mutants = []
    for attr in ("P", "Q"):
        fun: RatFun2 = getattr(cert, attr)
        for part in ("num", "den"):
            poly: Poly2 = getattr(fun, part)
            for key in sorted(poly.monomials):
                bumped = dict(poly.monomials)
                bumped[key] = bumped[key] + 1
                new_poly = Poly2(bumped)
                new_fun = (
                    RatFun2(new_poly, fun.den) if part == "num" else RatFun2(fun.num, new_poly)
                )
                kwargs = {
                    "name": f"{cert.name}[{attr}.{part}{key}+1]",
                    "P": cert.P,
                    "Q": cert.Q,
                    "shift_n": cert.shift_n,
                    "shift_k": cert.shift_k,
                    "kernel": cert.kernel,
                }
                kwargs[attr] = new_fun
                mutants.append(Certificate(**kwargs))
    return mutants
