"""Independent reference computations used by the tests.

None of these share code paths with the package: they work from the raw PD
tuples or braid words, with sympy, mpmath or plain brute force.
"""
from fractions import Fraction
from itertools import product

import mpmath
import sympy as sp

T = sp.symbols("t")


def pd_component_count(pd, free_loops=0):
    """Cycle tracing: a -> c continues the under-strand, b and d the over-strand."""
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c, d in pd:
        parent[find(a)] = find(c)
        parent[find(b)] = find(d)
    return len({find(x) for x4 in pd for x in x4}) + free_loops


def braid_permutation_cycles(strands, letters):
    perm = list(range(strands))
    for w in letters:
        i = abs(w) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen, cycles = set(), 0
    for s in range(strands):
        if s not in seen:
            cycles += 1
            while s not in seen:
                seen.add(s)
                s = perm[s]
    return cycles


def torus_signature(p, q):
    """Signature of T(p, q) from the lattice-point count (negative for positive knots)."""
    sigma = 0
    for i in range(1, p):
        for j in range(1, q):
            x = Fraction(i, p) + Fraction(j, q)
            sigma += -1 if Fraction(1, 2) < x < Fraction(3, 2) else 1
    return sigma


def torus_alexander(p, q):
    expr = sp.cancel((T ** (p * q) - 1) * (T - 1) / ((T ** p - 1) * (T ** q - 1)))
    return sp.Poly(sp.expand(expr), T)


def burau_alexander(strands, letters):
    """Alexander polynomial of a braid closure (up to +-t^k) from the Burau matrix."""
    B = sp.eye(strands)
    for w in letters:
        i = abs(w) - 1
        block = sp.Matrix([[1 - T, T], [1, 0]])
        if w < 0:
            block = block.inv()
        M = sp.eye(strands)
        M[i:i + 2, i:i + 2] = block
        B = B * M
    minor = (sp.eye(strands) - B)[:-1, :-1]
    return sp.factor(sp.cancel(minor.det()))


def same_up_to_unit(poly_coeffs, expr):
    """Is the integer coefficient list equal to expr up to +-t^k?"""
    num, den = sp.fraction(sp.cancel(expr))
    # strip powers of t from numerator and denominator
    p = sp.Poly(num, T)
    q = sp.Poly(den, T)
    if q.degree() > 0 and sp.Poly(q.as_expr() / T ** q.degree(), T).degree() != 0:
        return False
    coeffs = p.all_coeffs()[::-1]
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
    coeffs = [int(c) for c in coeffs]
    return coeffs == list(poly_coeffs) or [-c for c in coeffs] == list(poly_coeffs)


def dihedral_brute_force(relations, n_gens, mu, modulus):
    """All labellings mod ``modulus`` with m_mu = 0, by exhaustive search."""
    out = []
    for labels in product(range(modulus), repeat=n_gens):
        if labels[mu]:
            continue
        if all((labels[a] - 2 * labels[o] + labels[c]) % modulus == 0
               for o, a, c in relations):
            out.append(labels)
    return out


def brute_force_class_count(relations, n_gens, mu, modulus):
    sols = dihedral_brute_force(relations, n_gens, mu, modulus)
    nonabelian = [s for s in sols if any((2 * m) % modulus for m in s)]
    classes = {min(s, tuple((-m) % modulus for m in s)) for s in nonabelian}
    return len(classes)


def dihedral_group_order(labels, modulus):
    """Close {e^{i theta_r} j} under multiplication.

    An element e^{i pi k / modulus} j^b is stored as (k mod 2 modulus, b).
    """
    n2 = 2 * modulus

    def mul(x, y):
        (a, s), (b, t) = x, y
        if s == 0:
            return ((a + b) % n2, t)
        if t == 0:
            return ((a - b) % n2, 1)
        return ((a - b + modulus) % n2, 0)     # j^2 = -1 = e^{i pi}

    gens = [((2 * m) % n2, 1) for m in labels]
    group = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        new = []
        for g in frontier:
            for h in gens:
                x = mul(g, h)
                if x not in group:
                    group.add(x)
                    new.append(x)
        frontier = new
    return len(group)


def quaternion_ad_mp(q):
    """3x3 matrix of v -> q v q^-1, computed by multiplying basis quaternions."""
    def mul(p, r):
        return [p[0] * r[0] - p[1] * r[1] - p[2] * r[2] - p[3] * r[3],
                p[0] * r[1] + p[1] * r[0] + p[2] * r[3] - p[3] * r[2],
                p[0] * r[2] - p[1] * r[3] + p[2] * r[0] + p[3] * r[1],
                p[0] * r[3] + p[1] * r[2] - p[2] * r[1] + p[3] * r[0]]
    qc = [q[0], -q[1], -q[2], -q[3]]
    cols = []
    for e in ([0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]):
        v = mul(mul(q, e), qc)
        cols.append(v[1:])
    return mpmath.matrix([[cols[c][r] for c in range(3)] for r in range(3)])


def cocycle_rank_mp(images, relators, digits=50):
    """Rank of the cocycle system in high precision, via recursive cocycle expansion."""
    with mpmath.workdps(digits):
        ims = [[mpmath.mpf(x) for x in q] for q in images]
        s = len(ims)

        def qmul(p, r):
            return [p[0] * r[0] - p[1] * r[1] - p[2] * r[2] - p[3] * r[3],
                    p[0] * r[1] + p[1] * r[0] + p[2] * r[3] - p[3] * r[2],
                    p[0] * r[2] - p[1] * r[3] + p[2] * r[0] + p[3] * r[1],
                    p[0] * r[3] + p[1] * r[2] - p[2] * r[1] + p[3] * r[0]]

        rows = []
        for word in relators:
            # xi(u x) = xi(u) + Ad(u) xi(x);  xi(u x^-1) = xi(u) - Ad(u x^-1) xi(x)
            block = mpmath.zeros(3, 3 * s)
            u = [mpmath.mpf(1), 0, 0, 0]
            for letter in word:
                g = abs(letter) - 1
                q = ims[g] if letter > 0 else [ims[g][0], -ims[g][1], -ims[g][2], -ims[g][3]]
                if letter > 0:
                    A = quaternion_ad_mp(u)
                    u = qmul(u, q)
                    sign = 1
                else:
                    u = qmul(u, q)
                    A = quaternion_ad_mp(u)
                    sign = -1
                for r in range(3):
                    for c in range(3):
                        block[r, 3 * g + c] += sign * A[r, c]
            rows.append(block)
        M = mpmath.zeros(3 * len(rows), 3 * s)
        for k, block in enumerate(rows):
            for r in range(3):
                for c in range(3 * s):
                    M[3 * k + r, c] = block[r, c]
        if M.rows == 0:
            return 0
        sv = mpmath.svd_r(M, compute_uv=False)
        top = max(abs(x) for x in sv)
        return sum(1 for x in sv if abs(x) > top * mpmath.mpf(10) ** (-(digits // 2)))
