"""Local topological degree via the Eisenbud-Levine-Khimshiashvili signature.

For a germ H: (R^n, 0) -> (R^n, 0) whose local algebra Q = R[[x]]/(H) is
finite dimensional, the class of the Jacobian determinant J spans the socle
of Q.  For any linear form phi on Q with phi(J) > 0 the symmetric bilinear
form <a, b> = phi(a*b) is nondegenerate and its signature is deg_0 H.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegeneratePairing, NonIsolatedZero, NotFinite
from .polynomial import MapGerm, Polynomial, local_key
from .standard_basis import LOCAL, LocalAlgebra, compute_standard_basis, quotient_basis

__all__ = [
    "MapGerm",
    "GramForm",
    "SignatureResult",
    "jacobian_determinant",
    "exact_signature",
    "local_algebra",
    "gram_form",
    "local_degree",
    "admissible_functionals",
]


@dataclass(frozen=True)
class SignatureResult:
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def signature(self):
        return self.n_plus - self.n_minus

    @property
    def rank(self):
        return self.n_plus + self.n_minus


@dataclass(frozen=True)
class GramForm:
    """The ELK pairing on a local algebra.

    ``functional`` is the coordinate vector of phi in the dual basis,
    ``jacobian`` the coordinates of J, ``matrix[a][b] = phi(basis[a]*basis[b])``.
    """

    algebra: LocalAlgebra
    jacobian: tuple
    functional: tuple
    matrix: tuple

    @property
    def basis(self):
        return self.algebra.basis


def jacobian_determinant(H: MapGerm | Sequence[Polynomial]) -> Polynomial:
    """Determinant of the matrix of partial derivatives, expanded."""
    comps = tuple(H)
    variables = comps[0].variables
    n = len(comps)
    if len(variables) != n:
        raise ValueError("jacobian_determinant needs a square system")
    rows = [[p.diff(v) for v in variables] for p in comps]
    # Laplace expansion along rows, memoised on the set of remaining columns
    memo = {}

    def det(r, cols):
        if r == n:
            return Polynomial.constant(variables, 1)
        if cols in memo:
            return memo[cols]
        acc = Polynomial(variables)
        sign = 1
        for c in cols:
            entry = rows[r][c]
            if entry:
                rest = tuple(k for k in cols if k != c)
                term = entry * det(r + 1, rest)
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[cols] = acc
        return acc

    return det(0, tuple(range(n)))


def exact_signature(M) -> SignatureResult:
    """Inertia of a symmetric rational matrix by congruence (Lagrange).

    Diagonal pivots are used while available; when the remaining diagonal is
    zero but the block is not, a hyperbolic 2x2 block is split off.
    """
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    for row in A:
        if len(row) != n:
            raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i):
            if A[i][j] != A[j][i]:
                raise ValueError("matrix is not symmetric")
    pos = neg = 0
    live = list(range(n))
    while live:
        piv = next((i for i in live if A[i][i] != 0), None)
        if piv is not None:
            d = A[piv][piv]
            if d > 0:
                pos += 1
            else:
                neg += 1
            live.remove(piv)
            row = A[piv]
            for i in live:
                f = row[i]
                if not f:
                    continue
                f = f / d
                Ai = A[i]
                for j in live:
                    if row[j]:
                        Ai[j] -= f * row[j]
            continue
        pair = next(((i, j) for i in live for j in live if j > i and A[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        a = A[i][j]
        pos += 1
        neg += 1
        live.remove(i)
        live.remove(j)
        # Schur complement of [[0, a], [a, 0]]: A_kl -= (A_ki A_jl + A_kj A_il) / a
        ri, rj = A[i], A[j]
        for k in live:
            if not ri[k] and not rj[k]:
                continue
            Ak = A[k]
            for l in live:
                v = ri[k] * rj[l] + rj[k] * ri[l]
                if v:
                    Ak[l] -= v / a
    return SignatureResult(pos, neg, n - pos - neg)


def local_algebra(H: MapGerm | Sequence[Polynomial], strategy="normal") -> LocalAlgebra:
    """Local algebra R[[x]]/(H_1, ..., H_n) with multiplication tables."""
    H = H if isinstance(H, MapGerm) else MapGerm(tuple(H))
    sb = compute_standard_basis(list(H.components), LOCAL, strategy=strategy)
    try:
        return quotient_basis(sb)
    except NotFinite as exc:
        raise NonIsolatedZero(f"0 is not an isolated zero of {H}: {exc}") from None


def admissible_functionals(alg: LocalAlgebra, J_coords):
    """Sign-adjusted dual functionals of the support monomials of J.

    Returned as (basis index, sign) pairs, preferred choice first: the
    support monomial of highest degree, ties broken towards the smallest
    monomial in the local order.
    """
    support = [i for i, c in enumerate(J_coords) if c]
    support.sort(key=lambda i: local_key(alg.basis[i]))
    return [(i, 1 if J_coords[i] > 0 else -1) for i in support]


def _parents(alg):
    """For each basis monomial other than 1, a (parent index, variable) pair."""
    out = [None] * alg.dimension
    for a, m in enumerate(alg.basis):
        for i, e in enumerate(m):
            if e:
                out[a] = (alg.index(m[:i] + (e - 1,) + m[i + 1:]), i)
                break
    return out


def gram_form(H: MapGerm | Sequence[Polynomial], choice: int = 0,
              alg: LocalAlgebra | None = None) -> GramForm:
    """Build the ELK Gram matrix.

    ``choice`` indexes :func:`admissible_functionals`; 0 is the default
    functional.
    """
    H = H if isinstance(H, MapGerm) else MapGerm(tuple(H))
    if alg is None:
        alg = local_algebra(H)
    mu = alg.dimension
    if mu == 0:
        # H does not vanish at 0; MapGerm construction already forbids this
        raise NonIsolatedZero("local algebra is zero")
    J = alg.coordinates(jacobian_determinant(H))
    options = admissible_functionals(alg, J)
    if not options:
        raise DegeneratePairing("Jacobian class vanishes in the local algebra")
    idx, sign = options[choice]
    phi = [Fraction(0)] * mu
    phi[idx] = Fraction(sign)

    # rows r_a = phi^T M(m_a), built along parent chains since the M_i commute
    rows = [None] * mu
    rows[alg.index((0,) * len(alg.variables))] = phi
    parents = _parents(alg)
    mats = alg.multiplication
    for a in range(mu):
        if rows[a] is not None:
            continue
        p, i = parents[a]
        rp = rows[p]
        Mi = mats[i]
        rows[a] = [sum((rp[c] * Mi[c][b] for c in range(mu) if rp[c] and Mi[c][b]), Fraction(0))
                   for b in range(mu)]
    matrix = tuple(tuple(r) for r in rows)
    return GramForm(algebra=alg, jacobian=tuple(J), functional=tuple(phi), matrix=matrix)


def local_degree(H: MapGerm | Sequence[Polynomial], choice: int = 0) -> int:
    """deg_0 H as the signature of the ELK form."""
    form = gram_form(H, choice)
    sig = exact_signature(form.matrix)
    if sig.n_zero:
        raise DegeneratePairing(
            f"ELK form is degenerate (n_zero={sig.n_zero}); phi(J) > 0 should prevent this")
    return sig.signature
