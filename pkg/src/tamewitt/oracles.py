"""Brute-force oracles used to cross-check the closed-form classification.

Nothing here consults square classes, Hilbert symbols or the anisotropy
table; the answers come from finite searches that are exact for the inputs
they accept.
"""

from __future__ import annotations

from fractions import Fraction

from .padic import Involution, PadicElement, teichmuller
from .padic.element import vp


def _normalize(a: int, p: int) -> int:
    """Scale ``a`` by an even power of p so that its valuation is 0 or 1."""
    if a == 0:
        raise ValueError("zero coefficient")
    v = vp(a, p)
    return a // p ** (v - v % 2)


def to_qp_int(x: PadicElement) -> int:
    """An integer in the same square class as ``x`` (a Q_p element), valuation 0 or 1."""
    if x.field.degree != 1:
        raise ValueError("integer conversion needs an element of Q_p")
    v = x.val
    unit = x.shift(-v)
    w = unit.coords[0] * unit.field.p**unit.k % unit.field.p**3
    return w * x.field.p ** (v % 2)


def isotropic_vector(coeffs: list[int], p: int) -> list[int] | None:
    """A primitive x with sum a_i x_i^2 = 0 mod p^3, or None.

    Coefficients are normalized to valuation 0 or 1.  Such an x exists iff the
    diagonal form is isotropic over Q_p: a coordinate with v(a_i x_i) <= 1 and
    x_i a unit gives a derivative of valuation at most 1, and Hensel's lemma
    needs q(x) = 0 mod p^(2*1+1).
    """
    a = [_normalize(c, p) for c in coeffs]
    mod = p**3
    squares = [(x, x * x % mod) for x in range(mod)]
    # layer[i]: (sum, primitive) -> back-pointer (prev_state, x_i)
    layers = [{(0, False): None}]
    for ai in a:
        prev = layers[-1]
        cur: dict = {}
        for state in prev:
            s, prim = state
            for x, x2 in squares:
                nxt = ((s + ai * x2) % mod, prim or x % p != 0)
                if nxt not in cur:
                    cur[nxt] = (state, x)
        layers.append(cur)
    if (0, True) not in layers[-1]:
        return None
    xs = []
    state = (0, True)
    for layer in reversed(layers[1:]):
        state, x = layer[state]
        xs.append(x)
    return xs[::-1]


def is_isotropic(coeffs: list[int], p: int) -> bool:
    return isotropic_vector(coeffs, p) is not None


def _lift_root(coeffs: list[int], x: list[int], p: int, N: int) -> list[Fraction]:
    """Hensel-lift an approximate isotropic vector to a root mod p^N."""
    a = [_normalize(c, p) for c in coeffs]
    mod = p**N
    x = list(x)
    # pick the coordinate whose partial derivative has least valuation
    i = min((j for j in range(len(a)) if x[j] % p), key=lambda j: vp(a[j], p))
    for _ in range(2 * N + 2):
        q = sum(ai * xi * xi for ai, xi in zip(a, x)) % mod
        if q == 0:
            break
        d = 2 * a[i] * x[i]
        vd = vp(d, p)
        # Newton step on x_i, performed in Z/p^N after clearing p^vd
        dq = q // p**vd if q % p**vd == 0 else None
        if dq is None:
            raise AssertionError("Hensel certificate failed")  # pragma: no cover
        du = d // p**vd
        x[i] = (x[i] - dq * pow(du, -1, mod)) % mod
    return x


def oracle_diman(coeffs: list[int], p: int) -> int:
    """Anisotropic dimension of a diagonal form over Q_p (dimension at most 4),
    by isotropy search plus explicit splitting of a hyperbolic plane."""
    n = len(coeffs)
    if n > 4:
        raise ValueError("oracle supports dimension <= 4")
    if n == 0:
        return 0
    if not is_isotropic(coeffs, p):
        return n
    if n <= 3:
        return n - 2
    # n == 4: split H = span(x, y') and test the binary complement
    N = 12
    mod = p**N
    a = [_normalize(c, p) for c in coeffs]
    x = _lift_root(coeffs, isotropic_vector(coeffs, p), p, N)
    i = min((j for j in range(4) if x[j] % p), key=lambda j: vp(a[j], p))

    def b(v, w):
        return sum(Fraction(ai) * vi * wi for ai, vi, wi in zip(a, v, w))

    # y with b(x, y) = 1: y = e_i / (a_i x_i); make it isotropic
    y = [Fraction(0)] * 4
    y[i] = Fraction(1, a[i] * x[i])
    y = [yj - b(y, y) / 2 * xj for yj, xj in zip(y, x)]
    # complement: project the other basis vectors
    comp = []
    for j in range(4):
        if j == i:
            continue
        e = [Fraction(int(k == j)) for k in range(4)]
        z = [ej - b(e, y) * xj - b(e, x) * yj for ej, xj, yj in zip(e, x, y)]
        comp.append(z)
    # three projected vectors span the 2-dim complement; keep an independent pair
    pairs = [(0, 1), (0, 2), (1, 2)]
    best = None
    for s, t in pairs:
        g = [[b(comp[s], comp[s]), b(comp[s], comp[t])], [b(comp[t], comp[s]), b(comp[t], comp[t])]]
        det = g[0][0] * g[1][1] - g[0][1] ** 2
        if det != 0 and (best is None or _fval(det, p) < _fval(best[1], p)):
            best = (g, det)
    g, det = best
    # x was only an approximate root, so the Gram entries are approximate too;
    # N = 12 leaves far more digits than the mod p^3 search needs
    if g[0][0] != 0 and _fval(g[0][0], p) < N // 2:
        diag = [g[0][0], det / g[0][0]]
    elif g[1][1] != 0 and _fval(g[1][1], p) < N // 2:
        diag = [g[1][1], det / g[1][1]]
    else:
        return 0  # a basis vector of the complement is isotropic
    ints = [_frac_to_int(c, p, mod) for c in diag]
    return 0 if is_isotropic(ints, p) else 2


def _fval(x: Fraction, p: int) -> int:
    return vp(x.numerator, p) - vp(x.denominator, p)


def _frac_to_int(x: Fraction, p: int, mod: int) -> int:
    """An integer in the square class of the rational ``x``."""
    v = _fval(x, p)
    num = x.numerator // p ** vp(x.numerator, p)
    den = x.denominator // p ** vp(x.denominator, p)
    unit = num * pow(den, -1, mod) % mod
    return unit * p ** (v % 2)


def hilbert_oracle(a: int, b: int, p: int) -> int:
    """(a, b) = 1 iff z^2 = a x^2 + b y^2 has a nontrivial solution."""
    return 1 if is_isotropic([a, b, -1], p) else -1


def norm_oracle(x: PadicElement, sigma: Involution) -> bool:
    """Whether x in E0 is a norm, by searching y = pi^k * teich(r) over residues r.

    1 + p_E0 consists of squares of E0, which are norms, so it suffices to find
    y with N(y)/x in 1 + p.
    """
    E = sigma.field
    if x.val % 2:
        return False
    k = x.val // 2
    prec = min(x.prec, 12 * E.e)
    pi = E.uniformizer(prec + 2 * abs(k) + 4)
    pik = pi**k if k >= 0 else pi.inverse() ** (-k)
    kf = E.residue_field
    for r in kf.elements():
        if r == kf.zero:
            continue
        y = pik * teichmuller(E, r, prec + 4)
        ratio = y * sigma(y) / x
        if ratio.val == 0 and ratio.residue() == kf.one:
            return True
    return False
