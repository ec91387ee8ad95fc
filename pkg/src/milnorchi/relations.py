"""Euler characteristic relations for Milnor fibres, fibres and links.

Everything here reduces to local degrees and a handful of parity tables.
For F = (f_1, ..., f_k): (R^n, 0) -> (R^k, 0) with Milnor fibre M_F and
I = {i_1, ..., i_l}, L_I is the link of {f_i1 = ... = f_il = 0}; then

    n even:  chi(L_I) = 2 chi(M_F) for l odd,      0 for l even
    n odd:   chi(L_I) = 2 - 2 chi(M_F) for l odd,  2 for l even

whenever the tube fibration exists (Milnor's conditions (a) and (b)).  Those
conditions are not checked here: callers assert them, and the verifier
reports when the computed links contradict the assertion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .degree import jacobian_determinant, local_algebra, local_degree
from .errors import ConsistencyFail, HypothesisNotAsserted, NegativeCount, NotFinite
from .links import sphere_chi
from .polynomial import MapGerm, Polynomial, gradient
from .standard_basis import LOCAL, compute_standard_basis, quotient_basis

__all__ = [
    "MilnorInvariants",
    "LinkTable",
    "ConsistencyRow",
    "ConsistencyReport",
    "delta_sign_value",
    "khimshiashvili_chi",
    "isolated_milnor_chi",
    "link_table",
    "milnor_chi_from_link",
    "charl1_check",
    "semianalytic_chi",
    "boundary_chi",
    "fukui_D",
    "aoki_semibranches",
    "dutertre_mod2",
    "verify_all",
]


@dataclass(frozen=True)
class MilnorInvariants:
    n: int
    k: int
    chi_MF: int | None = None
    milnor_ab_asserted: bool = False

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be positive")


@dataclass(frozen=True)
class LinkTable:
    """chi(L_I) by |I| = l, and the semianalytic values (all chi(M_F))."""

    n: int
    k: int
    chi_MF: int
    chi_L: Mapping[int, int]
    semianalytic: int

    def __getitem__(self, l):
        return self.chi_L[l]


@dataclass(frozen=True)
class ConsistencyRow:
    name: str
    expected: int
    computed: int
    verdict: str

    def to_dict(self):
        return {"name": self.name, "expected": self.expected,
                "computed": self.computed, "verdict": self.verdict}


@dataclass(frozen=True)
class ConsistencyReport:
    rows: tuple
    derived: Mapping = field(default_factory=dict)

    @property
    def ok(self):
        return all(r.verdict == "pass" for r in self.rows)

    @property
    def hypothesis_refuted(self):
        return any(r.verdict == "hypothesis-failure" for r in self.rows)

    def to_dict(self):
        return {"rows": [r.to_dict() for r in self.rows], "derived": dict(self.derived),
                "ok": self.ok, "hypothesis_refuted": self.hypothesis_refuted}


def delta_sign_value(delta_sign) -> int:
    """Map a sign token ('+', '-', 1, -1) to +1 or -1."""
    if delta_sign in ("+", 1, "positive"):
        return 1
    if delta_sign in ("-", -1, "negative"):
        return -1
    raise ValueError(f"delta sign must be '+' or '-', got {delta_sign!r}")


def khimshiashvili_chi(f: Polynomial, delta_sign="+") -> int:
    """chi of the fibre f^-1(delta) near an isolated critical point."""
    s = -delta_sign_value(delta_sign)  # sign(-delta)
    n = f.nvars
    return 1 - s ** n * local_degree(gradient(f))


def isolated_milnor_chi(psi: Sequence[Polynomial]) -> int:
    """chi of the Milnor fibre of a map germ with an isolated singular point.

    n even: 1 - deg grad f_1, and all deg grad f_i must agree.
    n odd: 1, and every deg grad f_i must vanish.
    """
    psi = list(psi)
    k, n = len(psi), psi[0].nvars
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    degs = [local_degree(gradient(fi)) for fi in psi]
    if n % 2 == 0:
        if len(set(degs)) != 1:
            raise ConsistencyFail(
                f"degrees of the gradients differ: {degs}; 0 is not an isolated singular point")
        return 1 - degs[0]
    if any(degs):
        raise ConsistencyFail(
            f"n odd but gradient degrees are {degs}; 0 is not an isolated singular point")
    return 1


def _require_asserted(inv):
    if not inv.milnor_ab_asserted:
        raise HypothesisNotAsserted("Milnor's conditions (a) and (b) have not been asserted")


def _chi_link(n, l, chi_MF):
    if n % 2 == 0:
        return 2 * chi_MF if l % 2 else 0
    return 2 - 2 * chi_MF if l % 2 else 2


def link_table(inv: MilnorInvariants) -> LinkTable:
    _require_asserted(inv)
    if inv.chi_MF is None:
        raise ValueError("chi_MF is required")
    table = {l: _chi_link(inv.n, l, inv.chi_MF) for l in range(1, inv.k + 1)}
    return LinkTable(inv.n, inv.k, inv.chi_MF, table, inv.chi_MF)


def milnor_chi_from_link(chi_L1: int, n: int) -> int:
    """Invert the l = 1 row of the link table."""
    if chi_L1 % 2:
        raise ConsistencyFail(f"chi(L) = {chi_L1} is odd; the link table only produces even values")
    if n % 2 == 0:
        return chi_L1 // 2
    return (2 - chi_L1) // 2


def charl1_check(chi_LJ: int, chi_LI: int, n: int, l: int, chi_MF: int) -> bool:
    """chi(L_J) - chi(L_I) == (-1)^(n-l) 2 chi(M_F), where J drops the last index of I."""
    return chi_LJ - chi_LI == (-1) ** ((n - l) % 2) * 2 * chi_MF


def semianalytic_chi(inv: MilnorInvariants, sign_pattern: Sequence[str], l: int = 1) -> int:
    """chi of f_I^-1(delta) cut by sign conditions on further components."""
    _require_asserted(inv)
    for s in sign_pattern:
        if s not in ("<=", ">=", "≤", "≥"):
            raise ValueError(f"sign condition must be <= or >=, got {s!r}")
    if l < 1 or l + len(sign_pattern) > inv.k:
        raise ValueError(f"|I| + |pattern| = {l + len(sign_pattern)} exceeds k = {inv.k}")
    if inv.chi_MF is None:
        raise ValueError("chi_MF is required")
    return inv.chi_MF


def boundary_chi(chi_M: int, dim_M: int) -> int:
    """chi of the boundary of a compact manifold with boundary."""
    if dim_M < 1:
        raise ValueError("dimension must be at least 1")
    return 2 * chi_M if dim_M % 2 else 0


def fukui_D(f1: Polynomial, delta_sign="+") -> int:
    """chi({f_1 = delta, x_1 >= 0}) - chi({f_1 = delta, x_1 <= 0}) near 0."""
    s = -delta_sign_value(delta_sign)
    V = f1.variables
    H = MapGerm((f1,) + tuple(f1.diff(v) for v in V[1:]))
    return -(s ** len(V)) * local_degree(H)


def aoki_semibranches(phi: Sequence[Polynomial], fn: Polynomial | None = None) -> int:
    """Number of half-branches at 0 of the curve {phi = 0} in R^n."""
    phi = list(phi)
    V = phi[0].variables
    n = len(V)
    if len(phi) != n - 1:
        raise ValueError(f"need n - 1 = {n - 1} functions, got {len(phi)}")
    default_fn = fn is None
    if default_fn:
        fn = sum((Polynomial.variable(V, v) ** 2 for v in V), Polynomial(V))
    J = jacobian_determinant([fn] + phi)
    if J.is_zero() and default_fn:
        # |x|^2 is then constant along any real branch of {phi = 0}, so the
        # curve is just the origin; H = (0, phi) misses a half-space and has
        # degree 0 although its local algebra is infinite
        return 0
    count = 2 * local_degree(MapGerm((J,) + tuple(phi)))
    if count < 0:
        raise NegativeCount(f"2 deg H = {count} < 0")
    return count


def _minor_polys(rows, k):
    V = rows[0][0].variables
    n = len(rows[0])
    out = []
    for cols in combinations(range(n), k):
        sub = [[row[c] for c in cols] for row in rows]
        out.append(_det(sub, V))
    return out


def _det(M, V):
    if len(M) == 1:
        return M[0][0]
    acc = Polynomial(V)
    for j, a in enumerate(M[0]):
        if a:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            term = a * _det(minor, V)
            acc = acc + term if j % 2 == 0 else acc - term
    return acc


def dutertre_mod2(psi: Sequence[Polynomial]) -> int:
    """dim O/I mod 2, I = (f_1..f_(k-1), k x k minors of d(f_k, f_1..f_(k-1)))."""
    psi = list(psi)
    k = len(psi)
    V = psi[0].variables
    ordered = [psi[-1]] + psi[:-1]
    rows = [[p.diff(v) for v in V] for p in ordered]
    gens = [p for p in psi[:-1] + _minor_polys(rows, k) if p]
    if not gens:
        raise NotFinite("the ideal is zero")
    sb = compute_standard_basis(gens, LOCAL)
    if sb.is_unit_ideal():
        return 0
    return quotient_basis(sb).dimension % 2


def verify_all(inv: MilnorInvariants, witnesses: Mapping) -> ConsistencyReport:
    """Cross-check computed invariants against the link table.

    ``witnesses`` may hold
      "links": sequence of (label, l, chi) with chi = chi(L_I), |I| = l;
      "milnor_chi": sequence of (label, chi) with independent values of chi(M_F).
    Each value of chi(M_F) implied by a witness is compared with a reference
    value (``inv.chi_MF`` if given, else the first implied one).  When
    Milnor's conditions are asserted, a mismatch refutes the assertion and is
    reported as "hypothesis-failure"; otherwise it is a plain "fail".
    """
    links = [tuple(w) for w in witnesses.get("links", ())]
    direct = [tuple(w) for w in witnesses.get("milnor_chi", ())]
    if not links and not direct and inv.chi_MF is None:
        raise ValueError("verify_all needs at least one witness")
    n, k = inv.n, inv.k
    bad = "hypothesis-failure" if inv.milnor_ab_asserted else "fail"
    rows = []

    def row(name, expected, computed):
        rows.append(ConsistencyRow(name, expected, computed, "pass" if expected == computed else bad))

    implied = []
    if inv.chi_MF is not None:
        implied.append(("asserted", inv.chi_MF))
    for label, l, chi in links:
        if l % 2:
            if chi % 2:
                rows.append(ConsistencyRow(f"parity chi(L_{label})", 0, chi % 2, bad))
                continue
            implied.append((f"L_{label}", milnor_chi_from_link(chi, n)))
    implied += [(label, chi) for label, chi in direct]
    ref = implied[0][1] if implied else None

    derived = {"n": n, "k": k}
    if ref is not None:
        derived["chi_MF"] = ref
        derived["chi_boundary_MF"] = boundary_chi(ref, n - k) if n - k >= 1 else None
        derived["link_table"] = {str(l): _chi_link(n, l, ref) for l in range(1, k + 1)}
        for label, value in implied[1:]:
            row(f"chi(M_F) from {label} = chi(M_F) from {implied[0][0]}", ref, value)
        for label, l, chi in links:
            row(f"CharLink chi(L_{label}), l={l}", _chi_link(n, l, ref), chi)
            if l == 1:
                # J is empty, L_J is the whole sphere
                rhs = (-1) ** ((n - 1) % 2) * 2 * ref
                row(f"CharL1 chi(S^{n - 1}) - chi(L_{label})", rhs, sphere_chi(n - 1) - chi)
        for l in range(2, k + 1):
            lhs = _chi_link(n, l - 1, ref) - _chi_link(n, l, ref)
            row(f"CharL1 table l={l}", (-1) ** ((n - l) % 2) * 2 * ref, lhs)
        if k >= 2:
            row("CharSemi1 one sign condition", ref, ref)
    return ConsistencyReport(tuple(rows), derived)
