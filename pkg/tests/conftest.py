from fractions import Fraction

from hypothesis import assume, strategies as st

from milnorchi import MapGerm, Polynomial


def var_names(n, prefix="x"):
    return tuple(f"{prefix}{i + 1}" for i in range(n))


def univariate_degree(c, k):
    """deg_0 of t -> c t^k."""
    if k % 2 == 0:
        return 0
    return 1 if c > 0 else -1


coef = st.integers(-3, 3).filter(bool).map(Fraction)
small_coef = st.fractions(min_value=-1, max_value=1, max_denominator=4).filter(bool)


@st.composite
def monomials_of_degree(draw, n, d):
    """A random exponent tuple with total degree exactly d."""
    e = [0] * n
    for _ in range(d):
        e[draw(st.integers(0, n - 1))] += 1
    return tuple(e)


@st.composite
def diagonal_germs(draw, n, max_power=4, max_extra=3):
    """(c_i x_i^{p_i} + h_i) with every h_i of degree above max p_i.

    The perturbation is dominated by the diagonal part, so the zero is
    isolated and deg_0 is the product of the univariate degrees.  Returns
    (germ, expected degree, expected mu).
    """
    V = var_names(n)
    powers = [draw(st.integers(1, max_power)) for _ in range(n)]
    coefs = [draw(coef) for _ in range(n)]
    top = max(powers)
    comps = []
    for i in range(n):
        terms = {tuple(powers[i] if j == i else 0 for j in range(n)): coefs[i]}
        for _ in range(draw(st.integers(0, max_extra))):
            m = draw(monomials_of_degree(n, draw(st.integers(top + 1, top + 2))))
            terms[m] = terms.get(m, 0) + draw(small_coef)
        comps.append(Polynomial(V, terms))
    deg = 1
    mu = 1
    for c, p in zip(coefs, powers):
        deg *= univariate_degree(c, p)
        mu *= p
    return MapGerm(tuple(comps)), deg, mu


@st.composite
def invertible_matrices(draw, n, lo=-2, hi=2):
    M = [[Fraction(draw(st.integers(lo, hi))) for _ in range(n)] for _ in range(n)]
    d = det(M)
    assume(d != 0)
    return M, d


def det(M):
    M = [row[:] for row in M]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        d *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            for k in range(c, n):
                M[r][k] -= f * M[c][k]
    return d


def left_compose(A, H):
    """The germ A . H for a constant matrix A."""
    V = H.variables
    comps = []
    for row in A:
        acc = Polynomial(V)
        for a, h in zip(row, H):
            if a:
                acc = acc + h * a
        comps.append(acc)
    return MapGerm(tuple(comps))


def right_compose(H, B):
    """The germ H . B, i.e. x -> H(B x)."""
    V = H.variables
    xs = [Polynomial.variable(V, v) for v in V]
    images = []
    for row in B:
        acc = Polynomial(V)
        for b, x in zip(row, xs):
            if b:
                acc = acc + x * b
        images.append(acc)
    return MapGerm(tuple(substitute(h, images) for h in H))


def substitute(p, images):
    V = images[0].variables
    acc = Polynomial(V)
    for m, c in p.terms.items():
        t = Polynomial.constant(V, c)
        for img, e in zip(images, m):
            if e:
                t = t * img ** e
        acc = acc + t
    return acc
