"""Standard bases, normal forms and finite quotient algebras.

Global computations use Buchberger's algorithm under graded reverse
lexicographic order.  Local computations (the ring of germs at the origin)
use the negative degree reverse lexicographic order, in which 1 is the
largest monomial, together with Mora's weak normal form.

Basis computation runs on primitive integer polynomials (content removed at
every step).  Exact normal forms returned to callers are computed separately
with rational arithmetic, so ``p - normal_form(p)`` lies in the ideal.
"""

from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Sequence

from .errors import NotFinite
from .polynomial import Polynomial, grevlex_key, local_key

__all__ = [
    "TermOrder",
    "StandardBasis",
    "LocalAlgebra",
    "compute_standard_basis",
    "normal_form",
    "quotient_basis",
    "dump_basis",
]


class TermOrder(enum.Enum):
    GLOBAL_DEGREVLEX = "global"
    LOCAL_NEG_DEGREVLEX = "local"

    @property
    def key(self):
        return local_key if self is TermOrder.LOCAL_NEG_DEGREVLEX else grevlex_key

    @property
    def is_local(self):
        return self is TermOrder.LOCAL_NEG_DEGREVLEX


LOCAL = TermOrder.LOCAL_NEG_DEGREVLEX
GLOBAL = TermOrder.GLOBAL_DEGREVLEX

# number of truncation levels m^N, m^2N, ... tried before plain Mora
TRUNCATION_ATTEMPTS = 3
MORA_BUDGET = 20000  # reduction steps for the interleaved Mora attempts


# -- integer polynomial kernels ----------------------------------------------

def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _to_primitive_int(p):
    """Scale a Fraction-coefficient dict to a primitive integer dict."""
    if not p:
        return {}
    den = 1
    for c in p.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    q = {m: int(c * den) for m, c in p.items()}
    return _primitive(q)


def _primitive(q):
    g = 0
    for c in q.values():
        g = math.gcd(g, c)
        if g == 1:
            return q
    if g > 1:
        return {m: c // g for m, c in q.items()}
    return q


class _Entry:
    """A reducer: integer polynomial with cached leading monomial and ecart."""

    __slots__ = ("poly", "lm", "lc", "ecart", "deg")

    def __init__(self, poly, key):
        self.poly = poly
        self.lm = max(poly, key=key)
        self.lc = poly[self.lm]
        self.deg = max(sum(m) for m in poly)
        self.ecart = self.deg - sum(self.lm)


def _combine(h, h_lm, entry):
    """Cancel the term of ``h`` at ``h_lm`` using ``entry`` (fraction free)."""
    a = h[h_lm]
    b = entry.lc
    g = math.gcd(a, b)
    fa, fb = b // g, a // g  # h*fa - x^beta*entry*fb
    if fa < 0:
        fa, fb = -fa, -fb
    beta = tuple(x - y for x, y in zip(h_lm, entry.lm))
    out = {m: c * fa for m, c in h.items()} if fa != 1 else dict(h)
    for m, c in entry.poly.items():
        mm = tuple(x + y for x, y in zip(m, beta))
        v = out.get(mm, 0) - fb * c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


class _OutOfBudget(Exception):
    pass


def _mora_nf(h, reducers, key, budget=None):
    """Mora's weak normal form of ``h`` (integer dict) w.r.t. ``reducers``.

    For a global degree order this is ordinary top reduction.  The result
    ``r`` satisfies ``u*h = sum a_i g_i + r`` with ``u`` a unit of the local
    ring (a nonzero constant for global orders).  ``budget`` is a one-item
    list counting the reduction steps still allowed.
    """
    T = list(reducers)
    while h:
        if budget is not None:
            budget[0] -= 1
            if budget[0] < 0:
                raise _OutOfBudget
        lm = max(h, key=key)
        best = None
        for t in T:
            if (best is None or t.ecart < best.ecart) and _divides(t.lm, lm):
                best = t
                if t.ecart == 0:
                    break
        if best is None:
            return h
        deg = max(sum(m) for m in h)
        ecart = deg - sum(lm)
        if best.ecart > ecart:
            T.append(_Entry(h, key))
        h = _primitive(_combine(h, lm, best))
    return h


def _spoly(e1, e2):
    lcm = tuple(max(a, b) for a, b in zip(e1.lm, e2.lm))
    g = math.gcd(e1.lc, e2.lc)
    f1, f2 = e2.lc // g, e1.lc // g
    b1 = tuple(x - y for x, y in zip(lcm, e1.lm))
    b2 = tuple(x - y for x, y in zip(lcm, e2.lm))
    out = {}
    for m, c in e1.poly.items():
        out[tuple(x + y for x, y in zip(m, b1))] = c * f1
    for m, c in e2.poly.items():
        mm = tuple(x + y for x, y in zip(m, b2))
        v = out.get(mm, 0) - c * f2
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return _primitive(out) if out else out


def _gm_update(entries, pairs, new_index, key_of_pair):
    """Add pairs (i, new) with the Gebauer-Moeller criteria."""
    new = entries[new_index]
    cand = []
    for i in range(new_index):
        if entries[i] is None:
            continue
        lcm = tuple(max(a, b) for a, b in zip(entries[i].lm, new.lm))
        coprime = all(a == 0 or b == 0 for a, b in zip(entries[i].lm, new.lm))
        cand.append((i, lcm, coprime))
    # chain criterion on old pairs: drop (i, j) if lm(new) | lcm(i, j) and
    # lcm(i, new), lcm(j, new) both differ from lcm(i, j)
    kept = []
    for p in pairs:
        _, _, i, j, lcm = p
        if entries[i] is None or entries[j] is None:
            # dropped by truncation: the lcm, hence the S-polynomial, lies in m^cutoff
            continue
        if _divides(new.lm, lcm):
            li = tuple(max(a, b) for a, b in zip(entries[i].lm, new.lm))
            lj = tuple(max(a, b) for a, b in zip(entries[j].lm, new.lm))
            if li != lcm and lj != lcm:
                continue
        kept.append(p)
    # among new pairs drop those whose lcm is a proper multiple of another's
    survivors = []
    for i, lcm, coprime in cand:
        dominated = any(
            other != lcm and _divides(other, lcm) for _, other, _ in cand)
        if not dominated:
            survivors.append((i, lcm, coprime))
    seen = {}
    for i, lcm, coprime in survivors:
        # keep one pair per lcm; a coprime representative certifies the rest
        if lcm in seen:
            if coprime:
                seen[lcm] = (i, lcm, True)
            continue
        seen[lcm] = (i, lcm, coprime)
    for i, lcm, coprime in seen.values():
        if coprime:
            continue
        kept.append(key_of_pair(i, new_index, lcm))
    return kept


@dataclass(frozen=True)
class StandardBasis:
    """A minimal, monic standard basis.

    For the global order the basis is fully reduced.  For the local order
    tails are not reduced (that needs infinitely many steps in general).
    """

    variables: tuple
    generators: tuple
    order: TermOrder
    leading_monomials: tuple
    _int_entries: tuple = field(repr=False, compare=False, default=())

    def __len__(self):
        return len(self.generators)

    def is_unit_ideal(self):
        zero = (0,) * len(self.variables)
        return zero in self.leading_monomials

    def missing_pure_powers(self):
        """Indices of variables with no pure power among the leading monomials."""
        if self.is_unit_ideal():
            return []
        n = len(self.variables)
        missing = []
        for i in range(n):
            if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in self.leading_monomials):
                missing.append(i)
        return missing

    def is_finite(self):
        return not self.missing_pure_powers()

    @cached_property
    def corner(self):
        """Smallest N such that every monomial of degree >= N lies in the ideal.

        Only meaningful for a local order with a finite quotient.
        """
        return max((sum(m) for m in _standard_monomials(self)), default=-1) + 1


def _staircase(leads, n, cutoff=None):
    """Monomials outside the monomial ideal generated by ``leads``.

    With ``cutoff``, monomials of degree >= cutoff count as inside the ideal.
    Returns None when the staircase is infinite.
    """
    if (0,) * n in leads or cutoff == 0:
        return []
    if cutoff is None:
        for i in range(n):
            if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in leads):
                return None
    start = (0,) * n
    seen = {start}
    stack = [start]
    out = []
    while stack:
        m = stack.pop()
        out.append(m)
        for i in range(n):
            mm = m[:i] + (m[i] + 1,) + m[i + 1:]
            if mm in seen or any(_divides(lm, mm) for lm in leads):
                continue
            if cutoff is not None and sum(mm) >= cutoff:
                continue
            seen.add(mm)
            stack.append(mm)
    return out


def _truncated_nf(h, reducers, key, cutoff):
    """Top reduction modulo the monomials of degree >= cutoff."""
    while h:
        lm = max(h, key=key)
        best = None
        for t in reducers:
            if _divides(t.lm, lm) and (best is None or len(t.poly) < len(best.poly)):
                best = t
        if best is None:
            return h
        h = _combine(h, lm, best)
        h = _primitive({m: c for m, c in h.items() if sum(m) < cutoff}) if h else h
    return h


def _run_buchberger(int_gens, key, strategy, n, cutoff=None, budget=None):
    """Critical-pair completion.

    With ``cutoff=None`` reductions use Mora's weak normal form.  Otherwise
    all arithmetic is modulo the monomials of degree >= cutoff; as soon as
    the leading monomials show that every monomial of some degree c < cutoff
    is a leading monomial, Nakayama's lemma puts those monomials in the
    local ideal itself and the cutoff drops to c.  Returns
    ``(entries, cutoff, certified)``; ``certified`` means the result is a
    standard basis of the local ideal, not merely of ideal + m^cutoff.
    """
    counter = [0]

    def key_of_pair(i, j, lcm):
        counter[0] += 1
        rank = sum(lcm) if strategy == "normal" else 0
        return (rank, counter[0], i, j, lcm)

    entries = []
    pairs = []
    state = {"cutoff": cutoff, "certified": False}

    def reduce(h):
        live = [e for e in entries if e is not None]
        if state["cutoff"] is None:
            return _mora_nf(h, live, key, budget)
        return _truncated_nf(h, live, key, state["cutoff"])

    def tighten():
        N = state["cutoff"]
        leads = [e.lm for e in entries if e is not None]
        stairs = _staircase(leads, n, N if state["certified"] else None)
        if stairs is None:
            return
        c = max((sum(m) for m in stairs), default=-1) + 1
        if c >= N:
            return
        state["cutoff"] = c
        state["certified"] = True
        for idx, e in enumerate(entries):
            if e is None:
                continue
            t = {m: v for m, v in e.poly.items() if sum(m) < c}
            if not t:
                entries[idx] = None
            elif len(t) != len(e.poly):
                entries[idx] = _Entry(_primitive(t), key)

    def add(r):
        nonlocal pairs
        entries.append(_Entry(r, key))
        pairs = _gm_update(entries, pairs, len(entries) - 1, key_of_pair)
        if state["cutoff"] is not None:
            tighten()

    for q in int_gens:
        if state["cutoff"] is not None:
            q = _primitive({m: c for m, c in q.items() if sum(m) < state["cutoff"]}) if q else q
        r = reduce(q) if q else q
        if r:
            add(r)

    while pairs:
        pairs.sort()
        _, _, i, j, _ = pairs.pop(0)
        if entries[i] is None or entries[j] is None:
            continue
        s = _spoly(entries[i], entries[j])
        if s and state["cutoff"] is not None:
            s = _primitive({m: c for m, c in s.items() if sum(m) < state["cutoff"]}) if s else s
        if not s:
            continue
        r = reduce(s)
        if r:
            add(r)
    live = [e for e in entries if e is not None]
    if state["certified"]:
        # m^cutoff lies in the ideal; add the monomials of it not yet covered
        c = state["cutoff"]
        leads = [e.lm for e in live]
        stairs = _staircase(leads, n, c)
        border = set()
        for m in stairs or [(0,) * n]:
            for i in range(n):
                mm = m[:i] + (m[i] + 1,) + m[i + 1:]
                if sum(mm) >= c and not any(_divides(lm, mm) for lm in leads):
                    border.add(mm)
        if not stairs and c == 0:
            border = {(0,) * n}
        for mm in sorted(border):
            live.append(_Entry({mm: 1}, key))
    return live, state["cutoff"], state["certified"]


def compute_standard_basis(gens: Sequence[Polynomial], order: TermOrder = LOCAL,
                           strategy: str = "normal") -> StandardBasis:
    """Standard basis of the ideal generated by ``gens``.

    ``strategy`` selects the next critical pair: ``"normal"`` takes the pair
    with the smallest lcm degree (FIFO among ties), ``"fifo"`` takes pairs in
    creation order.

    Local bases are first attempted modulo m^N for a few increasing N; a
    certified truncated run is exact.  After each uncertified run, Mora's
    algorithm gets a bounded number of reduction steps (it is fast when the
    quotient is infinite dimensional, and slow on some finite ones); if all
    of that fails, Mora runs to completion, which always terminates.
    """
    gens = [g for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    variables = gens[0].variables
    for g in gens:
        if g.variables != variables:
            raise ValueError("generators are over different variable sets")
    if strategy not in ("normal", "fifo"):
        raise ValueError(f"unknown pair strategy {strategy!r}")
    key = order.key
    n = len(variables)
    int_gens = [q for q in (_to_primitive_int(dict(g.terms)) for g in gens) if q]

    final = None
    if order.is_local and int_gens:
        N = max(8, 2 * max(max(sum(m) for m in q) for q in int_gens))
        for _ in range(TRUNCATION_ATTEMPTS):
            entries, _, certified = _run_buchberger(int_gens, key, strategy, n, cutoff=N)
            if certified:
                final = entries
                break
            # not certified: the quotient may be infinite, which Mora settles
            # quickly when it does; give it a bounded number of steps
            try:
                final, _, _ = _run_buchberger(int_gens, key, strategy, n, budget=[MORA_BUDGET])
                break
            except _OutOfBudget:
                N *= 2
    if final is None:
        final, _, _ = _run_buchberger(int_gens, key, strategy, n, cutoff=None)

    final = _minimalize(final, key)
    if not order.is_local:
        final = _interreduce(final, key)
    gens_out = []
    for e in final:
        lc = Fraction(e.lc)
        gens_out.append(Polynomial(variables, {m: Fraction(c) / lc for m, c in e.poly.items()}))
    leads = tuple(e.lm for e in final)
    # deterministic order: by leading monomial, largest first
    perm = sorted(range(len(final)), key=lambda i: key(leads[i]), reverse=True)
    return StandardBasis(
        variables=variables,
        generators=tuple(gens_out[i] for i in perm),
        order=order,
        leading_monomials=tuple(leads[i] for i in perm),
        _int_entries=tuple(final[i] for i in perm),
    )


def _minimalize(entries, key):
    out = []
    for i, e in enumerate(entries):
        redundant = False
        for j, f in enumerate(entries):
            if i == j:
                continue
            if _divides(f.lm, e.lm) and (f.lm != e.lm or j < i):
                redundant = True
                break
        if not redundant:
            out.append(e)
    return out


def _interreduce(entries, key):
    """Fully reduce the tails of a minimal global Groebner basis."""
    out = []
    for i, e in enumerate(entries):
        others = [f for j, f in enumerate(entries) if j != i]
        lead_coeff = e.lc
        tail = {m: c for m, c in e.poly.items() if m != e.lm}
        red = _full_reduce_int(tail, others, key)
        poly = dict(red)
        # scale so that the lead coefficient matches the (scaled) remainder
        den = 1
        for c in red.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        poly = {m: int(c * den) for m, c in red.items()}
        poly[e.lm] = lead_coeff * den
        out.append(_Entry(_primitive(poly), key))
    return out


def _full_reduce_int(p, entries, key):
    """Full reduction of a Fraction/int dict by integer entries (global order)."""
    reducers = [(e.lm, Fraction(e.lc), e.poly) for e in entries]
    return _full_reduce(p, reducers, key, None)


def _full_reduce(p, reducers, key, cutoff):
    """Reduce every term of ``p`` by ``reducers`` = [(lm, lc, poly), ...].

    Terms are processed from the largest under ``key``.  When ``cutoff`` is
    given, terms of total degree >= cutoff are discarded (valid in a local
    algebra where the maximal ideal to that power is zero).
    """
    work = {}
    for m, c in p.items():
        if cutoff is not None and sum(m) >= cutoff:
            continue
        c = Fraction(c)
        if c:
            work[m] = c
    heap = [(_neg(key(m)), m) for m in work]
    heapq.heapify(heap)
    queued = set(work)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        queued.discard(m)
        c = work.pop(m, None)
        if not c:
            continue
        red = None
        for lm, lc, poly in reducers:
            if _divides(lm, m):
                red = (lm, lc, poly)
                break
        if red is None:
            rem[m] = c
            continue
        lm, lc, poly = red
        factor = c / lc
        beta = tuple(x - y for x, y in zip(m, lm))
        for mg, cg in poly.items():
            if mg == lm:
                continue
            mm = tuple(x + y for x, y in zip(mg, beta))
            if cutoff is not None and sum(mm) >= cutoff:
                continue
            v = work.get(mm, 0) - factor * cg
            if v:
                work[mm] = v
                if mm not in queued:
                    heapq.heappush(heap, (_neg(key(mm)), mm))
                    queued.add(mm)
            else:
                work.pop(mm, None)
    return rem


def _neg(k):
    # heapq is a min-heap; invert a (int, tuple-of-int) key
    return (-k[0], tuple(-x for x in k[1]))


def normal_form(p: Polynomial, sb: StandardBasis) -> Polynomial:
    """Normal form of ``p`` modulo the ideal of ``sb``.

    Global order: the usual remainder of full division.  Local order with a
    finite dimensional quotient: the exact remainder supported on standard
    monomials (terms beyond the corner degree vanish in the local algebra).
    Local order with an infinite quotient: Mora's weak normal form, defined
    only up to a unit; it is zero iff ``p`` lies in the local ideal.
    """
    if p.variables != sb.variables:
        raise ValueError("polynomial and basis are over different variables")
    key = sb.order.key
    reducers = [(lm, Fraction(1), dict(g.terms)) for lm, g in zip(sb.leading_monomials, sb.generators)]
    if not sb.order.is_local:
        return Polynomial(sb.variables, _full_reduce(dict(p.terms), reducers, key, None))
    if sb.is_finite():
        cutoff = sb.corner
        return Polynomial(sb.variables, _full_reduce(dict(p.terms), reducers, key, cutoff))
    q = _to_primitive_int(dict(p.terms))
    if not q:
        return Polynomial(sb.variables, {})
    r = _mora_nf(q, list(sb._int_entries), key)
    if not r:
        return Polynomial(sb.variables, {})
    # undo the integer scaling so that the result is a unit multiple of p's class
    scale = _scale_between(dict(p.terms), q)
    return Polynomial(sb.variables, {m: Fraction(c) * scale for m, c in r.items()})


def _scale_between(orig, scaled):
    m = next(iter(scaled))
    return Fraction(orig[m]) / scaled[m] if m in orig else Fraction(1)


def _standard_monomials(sb):
    stairs = _staircase(sb.leading_monomials, len(sb.variables))
    if stairs is None:
        names = ", ".join(sb.variables[i] for i in sb.missing_pure_powers())
        raise NotFinite(
            f"quotient is infinite dimensional: no pure power of {names} is a leading monomial")
    return stairs


@dataclass(frozen=True)
class LocalAlgebra:
    """Finite dimensional quotient algebra with multiplication tables.

    ``basis[0]`` is the constant monomial.  ``multiplication[i][r][c]`` is the
    coefficient of ``basis[r]`` in the normal form of ``x_i * basis[c]``.
    """

    variables: tuple
    basis: tuple
    multiplication: tuple
    standard_basis: StandardBasis = field(repr=False)
    corner: int = 0

    @property
    def dimension(self):
        return len(self.basis)

    mu = dimension

    def index(self, m):
        return self._index[m]

    @cached_property
    def _index(self):
        return {m: i for i, m in enumerate(self.basis)}

    def coordinates(self, p: Polynomial):
        """Coordinates of the class of ``p`` in ``basis``."""
        r = normal_form(p, self.standard_basis)
        vec = [Fraction(0)] * len(self.basis)
        idx = self._index
        for m, c in r.terms.items():
            vec[idx[m]] = c
        return vec

    def element(self, vec):
        return Polynomial(self.variables, {m: c for m, c in zip(self.basis, vec) if c})


def quotient_basis(sb: StandardBasis) -> LocalAlgebra:
    """Standard monomials and multiplication matrices of the quotient.

    Raises :class:`NotFinite` if some variable has no pure power among the
    leading monomials.
    """
    mons = _standard_monomials(sb)
    key = sb.order.key
    # constant first, then decreasing under the order for local, increasing for global
    if sb.order.is_local:
        mons.sort(key=key, reverse=True)
    else:
        mons.sort(key=key)
    basis = tuple(mons)
    mu = len(basis)
    idx = {m: i for i, m in enumerate(basis)}
    n = len(sb.variables)
    cutoff = (max((sum(m) for m in basis), default=-1) + 1) if sb.order.is_local else None
    reducers = [(lm, Fraction(1), dict(g.terms)) for lm, g in zip(sb.leading_monomials, sb.generators)]
    cache = {}
    mats = []
    for i in range(n):
        M = [[Fraction(0)] * mu for _ in range(mu)]
        for c, b in enumerate(basis):
            m = b[:i] + (b[i] + 1,) + b[i + 1:]
            if m in idx:
                M[idx[m]][c] = Fraction(1)
                continue
            if m not in cache:
                cache[m] = _full_reduce({m: 1}, reducers, key, cutoff)
            for mm, v in cache[m].items():
                M[idx[mm]][c] = v
        mats.append(tuple(tuple(row) for row in M))
    return LocalAlgebra(
        variables=sb.variables,
        basis=basis,
        multiplication=tuple(mats),
        standard_basis=sb,
        corner=cutoff if cutoff is not None else 0,
    )


def dump_basis(sb: StandardBasis) -> str:
    """One generator per line in canonical printing."""
    return "\n".join(str(g) for g in sb.generators)
