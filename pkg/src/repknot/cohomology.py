"""Twisted cohomology H^1(group; su(2) with the adjoint action of rho).

A 1-cocycle is fixed by its values xi(S_r) in R^3 (the imaginary
quaternions).  The cocycle law xi(gh) = xi(g) + Ad rho(g) xi(h) expands a
relator word term by term along the same walk used for Fox derivatives, so
each relator gives a 3 x 3s block of linear conditions.
"""
from dataclasses import dataclass

import numpy as np

from . import quaternion as qt
from .errors import IllConditioned
from .presentation import fox_walk

RELATIVE_CUT = 1e-7
MIN_GAP = 1e2


@dataclass
class CocycleReport:
    dim_Z1: int
    dim_B1: int
    dim_H1: int
    restriction_onto: bool
    gap: float
    rep: object = None

    def to_json(self):
        return {"dim_Z1": self.dim_Z1, "dim_B1": self.dim_B1, "dim_H1": self.dim_H1,
                "restriction_onto": self.restriction_onto,
                "rank_gap": None if self.gap == float("inf") else float(f"{self.gap:.3e}")}


def cocycle_matrix(images, p):
    s = p.n_generators
    relators = p.relators()
    M = np.zeros((3 * len(relators), 3 * s))
    for r, word in enumerate(relators):
        for g, sign, prefix in fox_walk(word):
            M[3 * r:3 * r + 3, 3 * g:3 * g + 3] += sign * qt.ad(qt.word_product(prefix, images))
    return M


def _null_space(M, n_cols):
    """Orthonormal null space basis (columns) and the singular value gap."""
    if M.shape[0] == 0:
        return np.eye(n_cols), float("inf")
    _, sv, vt = np.linalg.svd(M)
    sv = np.concatenate([sv, np.zeros(n_cols - len(sv))])
    top = sv[0]
    if top == 0:
        return np.eye(n_cols), float("inf")
    keep = sv > RELATIVE_CUT * top
    rank = int(keep.sum())
    gap = float("inf")
    if 0 < rank < n_cols:
        floor = max(sv[rank], np.finfo(float).eps * top)
        gap = float(sv[rank - 1] / floor)
        if gap < MIN_GAP:
            raise IllConditioned(f"singular value gap {gap:.2e} is below {MIN_GAP:.0e}", gap)
    return vt[rank:].T, gap


def cocycle_space(r, p):
    """Basis of Z^1 (as columns of length 3s) and its dimension."""
    basis, _ = _null_space(cocycle_matrix(r.images, p), 3 * p.n_generators)
    return basis, basis.shape[1]


def fixed_space_dim(images):
    if len(images) == 0:
        return 3
    M = np.vstack([qt.ad(q) - np.eye(3) for q in images])
    sv = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(sv <= RELATIVE_CUT * max(sv[0], 1.0)))


def coboundary_dim(r):
    return 3 - fixed_space_dim(r.images)


def h1_dim(r, p):
    _, dim_z = cocycle_space(r, p)
    return dim_z - coboundary_dim(r)


def restriction_onto(r, p, mu=None, basis=None):
    """Does some cocycle have xi(mu) with a component along the axis of rho(mu)?

    H^1 of the meridian circle is the axis of rho(mu); coboundaries have no
    component along it, so this is surjectivity of the restriction map.
    A central rho(mu) has no axis and gives False.
    """
    mu = p.distinguished_meridian if mu is None else mu
    if basis is None:
        basis, _ = cocycle_space(r, p)
    v = r.images[mu][1:]
    norm = np.linalg.norm(v)
    if norm < 1e-9 or basis.shape[1] == 0:
        return False
    axis = v / norm
    values = basis[3 * mu:3 * mu + 3, :]
    return bool(np.max(np.abs(axis @ values)) > RELATIVE_CUT)


def report(r, p):
    M = cocycle_matrix(r.images, p)
    basis, gap = _null_space(M, 3 * p.n_generators)
    dim_z = basis.shape[1]
    dim_b = coboundary_dim(r)
    return CocycleReport(dim_Z1=dim_z, dim_B1=dim_b, dim_H1=dim_z - dim_b,
                         restriction_onto=restriction_onto(r, p, basis=basis),
                         gap=gap, rep=r)
