"""Binary dihedral meridian-traceless representations, solved exactly.

A label m_r mod D on each Wirtinger generator encodes
rho(S_r) = e^{i theta_r} j with theta_r = 2 pi m_r / D.  Since
(e^{i a} j) e^{i b} j (e^{i a} j)^-1 = e^{i (2a - b)} j, a crossing with
over-arc o and under-arcs a -> c holds exactly when

    m_a - 2 m_o + m_c = 0  (mod D)

whatever the crossing sign.  Conjugation by e^{i phi} shifts every label by
a constant and conjugation by j negates them, so classes are taken with the
distinguished meridian at 0 and up to m -> -m.
"""
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import quaternion as qt
from .errors import HypothesisViolation, ZeroDeterminant
from .intmat import kernel_mod
from .presentation import wirtinger
from .variety import make_point


@dataclass(frozen=True)
class DihedralClass:
    labels: tuple
    modulus: int
    normalized: bool = True

    def angles(self):
        return [2 * np.pi * m / self.modulus for m in self.labels]

    def is_abelian(self):
        # e^{ia} j and e^{ib} j commute iff a - b is a multiple of pi
        return all((2 * (m - self.labels[0])) % self.modulus == 0 for m in self.labels)

    def to_json(self):
        return {"labels": list(self.labels), "image_order": image_order(self)}


def congruence_matrix(p):
    rows = []
    for rel in p.relations:
        row = [0] * p.n_generators
        row[rel.into] += 1
        row[rel.over] -= 2
        row[rel.out] += 1
        rows.append(row)
    return rows


def satisfies_relations(labels, p, modulus):
    return all((labels[r.into] - 2 * labels[r.over] + labels[r.out]) % modulus == 0
               for r in p.relations)


def normalized_solutions(p, modulus):
    """Every labelling with the distinguished meridian at 0, abelian ones included."""
    pin = [0] * p.n_generators
    pin[p.distinguished_meridian] = 1
    return kernel_mod(congruence_matrix(p) + [pin], modulus, p.n_generators)


def canonical(labels, modulus):
    neg = tuple((-m) % modulus for m in labels)
    return min(tuple(labels), neg)


def enumerate_classes(p, delta):
    """Non-abelian binary dihedral classes with labels mod ``delta``."""
    if delta == 0:
        raise ZeroDeterminant("determinant is zero: the labelling space is infinite")
    if delta < 0:
        raise ValueError("modulus must be positive")
    seen = set()
    for sol in normalized_solutions(p, delta):
        c = DihedralClass(canonical(sol, delta), delta)
        if not c.is_abelian():
            seen.add(c.labels)
    return [DihedralClass(labels, delta) for labels in sorted(seen)]


def image_order(c):
    """Order of the subgroup of the unit quaternions generated by the images.

    Products e^{ia} j (e^{ib} j)^-1 = e^{i(a-b)} and squares -1 generate the
    cyclic part H; the image is H together with one coset H j-element.
    """
    n = c.modulus
    g = 0
    for m in c.labels:
        g = gcd(g, m - c.labels[0])
    rotation = n // gcd(g, n)          # order of e^{2 pi i g / n}
    cyclic = rotation if rotation % 2 == 0 else 2 * rotation
    return 2 * cyclic


# conjugation by (1 - k)/sqrt(2) sends j to i
_TO_I = qt.normalize(np.array([1.0, 0.0, 0.0, -1.0]))


def lift_to_su2(c, p):
    """RepPoint in R(K, i): S_r -> cos(theta_r) j + sin(theta_r) k, conjugated so mu -> i."""
    mu = p.distinguished_meridian
    # conjugating by e^{-i phi / 2} moves e^{i phi} j to j, i.e. shifts labels to m_mu = 0
    shift = qt.from_angle_axis(-c.angles()[mu] / 2, [1.0, 0.0, 0.0])
    g = qt.mul(_TO_I, shift)
    images = []
    for theta in c.angles():
        q = np.array([0.0, 0.0, np.cos(theta), np.sin(theta)])
        images.append(qt.mul(qt.mul(g, q), qt.conj(g)))
    images = np.array(images)
    return make_point(images, p, pin_meridian=True)


@dataclass
class MeridianFormVerdict:
    consistent: bool
    vacuous: bool
    witnesses: list     # (component kept in N, under-crossings beneath the other)

    def to_json(self):
        return {"consistent": self.consistent, "vacuous": self.vacuous,
                "witnesses": [{"component": k, "sign_changes": n} for k, n in self.witnesses]}


def meridian_form_check(c, d, delta):
    """Check that meridians of a 2-component link with det = 2 mod 4 go to e^{i theta} j.

    Labels encode e^{i theta} j elements by construction.  The sign walk
    covers the alternative: if component k went to {e^{i theta}} its image
    would be +-i, and it flips sign each time it passes under the other
    component.  Returning to the start needs an even number of flips, and
    that number has the parity of the linking number, which is odd here.
    ``c`` may be None when there is no non-abelian class.
    """
    if d.n_components != 2:
        raise HypothesisViolation(f"needs 2 components, got {d.n_components}")
    if delta % 4 != 2:
        raise HypothesisViolation(f"needs det = 2 mod 4, got {delta}")
    witnesses = []
    for k in range(2):
        flips = sum(1 for over, under in d.crossing_components if under == k and over != k)
        if flips % 2:
            witnesses.append((k, flips))
    consistent = len(witnesses) == 2
    if c is not None:
        consistent = consistent and not c.is_abelian() and satisfies_relations(
            c.labels, wirtinger(d), c.modulus)
    return MeridianFormVerdict(consistent, c is None, witnesses)
