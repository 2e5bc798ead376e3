"""The branched double cover and the map B to its SO(3) representations.

pi_1 of the double cover X_2 of the complement is the kernel of the map
sending every meridian to the generator of Z/2.  With Schreier transversal
{1, S_1} it is generated by S_1^2, S_1 S_r and S_r S_1^-1; once the lifts of
the squared meridians are filled in, S_1^2 and S_1 S_r already generate,
which is the word list used here.

A meridian-traceless rho has rho(mu^2) = -1 for every meridian, so
Ad rho kills the filling words and descends to the branched cover.
"""
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import diagram as dg
from . import quaternion as qt
from .errors import DisconnectedDiagram, FillingNotKilled, OracleMismatch
from .intmat import rank_mod_p
from .presentation import determinant


def h1_sigma2(d):
    """(order of H_1 of the branched double cover, its F_2 rank).

    The order is det(L), 0 meaning infinite.  The F_2 rank is read off the
    Goeritz matrix (its corank mod 2, plus one per extra split piece) and
    checked against l - 1.
    """
    order = determinant(d)
    try:
        parts = [dg.goeritz(d)]
    except DisconnectedDiagram as split:
        parts = split.parts
    rank2 = len(parts) - 1
    for g in parts:
        n = len(g.matrix)
        rank2 += n - (rank_mod_p([list(row) for row in g.matrix], 2) if n else 0)
    if rank2 != d.n_components - 1:
        raise OracleMismatch(
            f"F_2 rank {rank2} of H_1 differs from components - 1 = {d.n_components - 1}")
    if order and order % 2 ** rank2:
        raise OracleMismatch(f"2^{rank2} does not divide the order {order}")
    return order, rank2


def even_subgroup_generators(p):
    """(generator words, filling words); words use signed 1-based letters."""
    words = [(1, 1)] + [(1, r + 1) for r in range(1, p.n_generators)]
    fillings = []
    for comp in sorted(set(p.generators)):
        r = min(g for g, c in enumerate(p.generators) if c == comp)
        fillings.append((r + 1, r + 1))
    return words, fillings


def _project_so3(M):
    U, _, Vt = np.linalg.svd(M)
    R = U @ Vt
    if np.linalg.det(R) < 0:
        U[:, -1] *= -1
        R = U @ Vt
    return R


@dataclass
class SO3Rep:
    images: list
    generator_words: list
    filling_words: list

    def commutator_defect(self):
        worst = 0.0
        for A, B in combinations(self.images, 2):
            worst = max(worst, float(np.linalg.norm(A @ B - B @ A)))
        return worst

    def to_json(self):
        return {"generator_words": [list(w) for w in self.generator_words],
                "filling_words": [list(w) for w in self.filling_words],
                "abelian": is_abelian_so3(self),
                "commutator_defect": float(f"{self.commutator_defect():.3e}")}


def b_map(r, p, tol=1e-9):
    words, fillings = even_subgroup_generators(p)
    for w in fillings:
        image = qt.ad(qt.word_product(w, r.images))
        if np.linalg.norm(image - np.eye(3)) > tol ** 0.5:
            raise FillingNotKilled(f"filling word {w} is not sent to the identity")
    images = [_project_so3(qt.ad(qt.word_product(w, r.images))) for w in words]
    return SO3Rep(images=images, generator_words=words, filling_words=fillings)


def is_abelian_so3(s, tol=1e-6):
    return s.commutator_defect() < tol
