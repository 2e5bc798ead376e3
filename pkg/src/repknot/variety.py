"""Numerical exploration of meridian-traceless SU(2) representations.

A point assigns a unit quaternion to every Wirtinger generator.  With
``pin_meridian`` the distinguished meridian is held at the quaternion i, so
solutions form R(K, i); irreducible conjugacy classes then show up as circles
(the residual conjugation by e^{i theta}).

Solving is a Riemannian Levenberg-Marquardt iteration on a product of
3-spheres: each step moves q -> q exp(delta) with delta pure imaginary, so
images stay exactly on the unit sphere.

Points are compared through their character: traces of a fixed schedule of
words (every generator, every product of two distinct generators and every
product of three increasing generators).  Traces of words of length at most
three determine an SU(2) representation up to conjugacy, and the length-three
words are what separate a point from its image under the involution.
"""
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import quaternion as qt
from .errors import NoConvergence, TestDisagreement
from .presentation import fox_walk


@dataclass(frozen=True)
class Tolerances:
    accept: float = 1e-9        # residual below which a point is a solution
    cluster: float = 1e-4       # max-norm distance between characters
    equal: float = 1e-6         # commutator / frame / involution tests
    rank: float = 1e-6          # relative singular value cut for dimensions


PROFILES = {
    "default": Tolerances(),
    "strict": Tolerances(accept=1e-12, cluster=1e-5, equal=1e-8, rank=1e-8),
}


@dataclass
class RepPoint:
    images: np.ndarray          # (s, 4) unit quaternions
    residual: float
    character: np.ndarray
    pinned: bool = False
    iterations: int = 0

    def to_json(self, digits=8):
        return {
            "residual": float(f"{self.residual:.3e}"),
            "images": [[round(float(x), digits) + 0.0 for x in q] for q in self.images],
            "character": [round(float(x), digits) + 0.0 for x in self.character],
        }


def word_schedule(n_generators):
    gens = range(1, n_generators + 1)
    words = [(g,) for g in gens]
    words += list(combinations(gens, 2))
    words += list(combinations(gens, 3))
    return words


def character(images, schedule=None):
    schedule = schedule or word_schedule(len(images))
    return np.array([qt.trace(qt.word_product(w, images)) for w in schedule])


def make_point(images, p, pin_meridian=False, iterations=0):
    images = np.array(images, dtype=float)
    return RepPoint(images=images,
                    residual=residual(images, p, pin_meridian),
                    character=character(images),
                    pinned=pin_meridian, iterations=iterations)


def residual(assignment, p, pin_meridian=False):
    """Squared relation defects plus squared real parts (plus the pin term)."""
    images = np.asarray(assignment, dtype=float)
    total = 0.0
    for word in p.relators():
        total += float(np.sum((qt.word_product(word, images) - qt.ONE) ** 2))
    total += float(np.sum(images[:, 0] ** 2))
    if pin_meridian:
        total += float(np.sum((images[p.distinguished_meridian] - qt.I) ** 2))
    return total


def _system(images, p, free):
    """Residual vector and Jacobian in the tangent coordinates of ``free``."""
    col = {g: 3 * k for k, g in enumerate(free)}
    relators = p.relators()
    n_rows = 4 * len(relators) + len(free)
    F = np.zeros(n_rows)
    Jac = np.zeros((n_rows, 3 * len(free)))
    conj = [qt.conj(q) for q in images]
    for r, word in enumerate(relators):
        letters = [images[x - 1] if x > 0 else conj[-x - 1] for x in word]
        m = len(letters)
        prefix = [qt.ONE]
        for q in letters:
            prefix.append(qt.mul(prefix[-1], q))
        suffix = [qt.ONE]
        for q in reversed(letters):
            suffix.append(qt.mul(q, suffix[-1]))
        suffix.reverse()           # suffix[k] = letters[k] ... letters[m-1]
        F[4 * r:4 * r + 4] = prefix[m] - qt.ONE
        for k, (g, sign, _) in enumerate(fox_walk(word)):
            if g not in col:
                continue
            if sign > 0:
                block = qt.left_matrix(prefix[k + 1]) @ qt.right_matrix(suffix[k + 1])
            else:
                block = -qt.left_matrix(prefix[k]) @ qt.right_matrix(suffix[k])
            Jac[4 * r:4 * r + 4, col[g]:col[g] + 3] += block @ qt.IMAG
    base = 4 * len(relators)
    for k, g in enumerate(free):
        F[base + k] = images[g][0]
        Jac[base + k, 3 * k:3 * k + 3] = (qt.left_matrix(images[g]) @ qt.IMAG)[0]
    return F, Jac


def _free_generators(p, pin_meridian):
    mu = p.distinguished_meridian
    return [g for g in range(p.n_generators) if not (pin_meridian and g == mu)]


def _step(images, free, delta):
    out = images.copy()
    for k, g in enumerate(free):
        out[g] = qt.normalize(qt.mul(images[g], qt.exp_imag(delta[3 * k:3 * k + 3])))
    return out


def solve_from_seed(seed, p, pin_meridian=False, max_iter=500, tol=None):
    """Levenberg-Marquardt from ``seed`` (an (s, 4) array of unit quaternions).

    Returns a RepPoint once the residual is below the acceptance threshold and
    has been polished to round-off; raises NoConvergence otherwise.
    """
    tol = tol or PROFILES["default"]
    images = np.array([qt.normalize(q) for q in np.asarray(seed, dtype=float)])
    if pin_meridian:
        images[p.distinguished_meridian] = qt.I
    free = _free_generators(p, pin_meridian)
    if not free:
        point = make_point(images, p, pin_meridian)
        if point.residual < tol.accept:
            return point
        raise NoConvergence("no free generators and the residual is not zero",
                            point.residual, 0)
    lam = 1e-3
    F, Jac = _system(images, p, free)
    cost = float(F @ F)
    it = 0
    for it in range(1, max_iter + 1):
        if cost < 1e-28:
            break
        A = Jac.T @ Jac
        g = Jac.T @ F
        delta = np.linalg.solve(A + lam * np.eye(len(A)), -g)
        trial = _step(images, free, delta)
        F_new, J_new = _system(trial, p, free)
        new_cost = float(F_new @ F_new)
        if new_cost < cost:
            improvement = cost - new_cost
            images, F, Jac, cost = trial, F_new, J_new, new_cost
            lam = max(lam / 3.0, 1e-12)
            if improvement < 1e-30 and cost < tol.accept:
                break
        else:
            lam *= 4.0
            if lam > 1e12:
                break
    if cost >= tol.accept:
        raise NoConvergence(f"residual {cost:.3e} after {it} iterations", cost, it)
    return make_point(images, p, pin_meridian, iterations=it)


# ---------------------------------------------------------------------------
# tests on a single point

def _commutator_defect(a, b):
    c = qt.mul(qt.mul(a, b), qt.mul(qt.conj(a), qt.conj(b)))
    return float(np.linalg.norm(c - qt.ONE))


def is_reducible(r, tol=None):
    tol = tol or PROFILES["default"]
    imgs = r.images
    return all(_commutator_defect(imgs[a], imgs[b]) < tol.equal
               for a, b in combinations(range(len(imgs)), 2))


def involution(r, p=None):
    """rho'(g) = j chi(g) rho(g) j^-1 with chi = -1 on every meridian.

    chi(g) = (-1)^(exponent sum of g) is a homomorphism to the centre for
    every link, so the formula is always defined.
    """
    images = np.array([qt.mul(qt.mul(qt.J, -q), qt.conj(qt.J)) for q in r.images])
    res = residual(images, p, r.pinned) if p is not None else r.residual
    return RepPoint(images=images, residual=res, character=character(images),
                    pinned=r.pinned, iterations=r.iterations)


def _dihedral_by_frame(images, tol):
    """True if some axis n makes every image axis parallel or perpendicular to n."""
    axes = []
    for q in images:
        v = q[1:]
        norm = np.linalg.norm(v)
        if norm > tol:
            axes.append(v / norm)
    if not axes:
        return True
    candidates = list(axes)
    for a, b in combinations(axes, 2):
        c = np.cross(a, b)
        if np.linalg.norm(c) > 1e-3:
            candidates.append(c / np.linalg.norm(c))
    for n in candidates:
        if all(min(abs(np.dot(n, v)), np.linalg.norm(np.cross(n, v))) < tol for v in axes):
            return True
    return False


def _dihedral_by_involution(r, tol):
    other = involution(r)
    return float(np.max(np.abs(other.character - r.character))) < tol


def is_binary_dihedral(r, tol=None):
    """Conjugate into the binary dihedral group?

    Two independent routes must agree: an explicit frame search and the
    comparison of characters of r and involution(r).
    """
    tol = tol or PROFILES["default"]
    by_frame = _dihedral_by_frame(r.images, tol.equal)
    by_involution = _dihedral_by_involution(r, tol.equal)
    if by_frame != by_involution:
        raise TestDisagreement(
            f"frame test says {by_frame}, involution test says {by_involution}")
    return by_frame


def local_dimension(r, p, tol=None):
    """Nullity of the linearized system at r, with the singular value gap.

    Returns (nullity, gap) where gap is the ratio of the smallest retained
    singular value to the largest discarded one.
    """
    tol = tol or PROFILES["default"]
    free = _free_generators(p, r.pinned)
    if not free:
        return 0, float("inf")
    _, Jac = _system(r.images, p, free)
    sv = np.linalg.svd(Jac, compute_uv=False)
    n = Jac.shape[1]
    sv = np.concatenate([sv, np.zeros(max(0, n - len(sv)))])
    top = sv[0] if len(sv) and sv[0] > 0 else 1.0
    kept = sv[sv > tol.rank * top]
    dropped = sv[sv <= tol.rank * top]
    nullity = len(dropped)
    if nullity == 0 or len(kept) == 0:
        return nullity, float("inf")
    floor = max(float(dropped[0]), np.finfo(float).eps * top)
    return nullity, float(kept[-1] / floor)


# ---------------------------------------------------------------------------
# scans

@dataclass
class Cluster:
    representative: RepPoint
    count: int
    classification: str         # reducible | dihedral | other-irreducible
    local_dimension: int
    orbit_dimension: int
    rank_gap: float

    @property
    def transverse_dimension(self):
        return self.local_dimension - self.orbit_dimension

    def to_json(self):
        gap = self.rank_gap
        return {
            "classification": self.classification,
            "count": self.count,
            "local_dimension": self.local_dimension,
            "transverse_dimension": self.transverse_dimension,
            "rank_gap": None if gap == float("inf") else float(f"{gap:.3e}"),
            "representative": self.representative.to_json(),
        }


@dataclass
class ConjugacyClassSet:
    clusters: list
    n_seeds: int
    n_converged: int
    pinned: bool
    rng_seed: int
    failures: list = field(default_factory=list)   # residuals of failed seeds

    def count(self, classification):
        return sum(1 for c in self.clusters if c.classification == classification)

    def irreducible(self):
        return [c for c in self.clusters if c.classification != "reducible"]

    def to_json(self):
        return {
            "n_seeds": self.n_seeds,
            "n_converged": self.n_converged,
            "pinned": self.pinned,
            "rng": self.rng_seed,
            "clusters": [c.to_json() for c in self.clusters],
        }


def _thread_count():
    try:
        return max(1, int(os.environ.get("REPKNOT_THREADS", "1")))
    except ValueError:
        return 1


def _orbit_dimension(reducible, pinned, images):
    if pinned:
        return 0 if reducible else 1
    if reducible:
        trivial = all(np.linalg.norm(q - qt.ONE) < 1e-9 or np.linalg.norm(q + qt.ONE) < 1e-9
                      for q in images)
        return 0 if trivial else 2
    return 3


def _classify(r, tol):
    if is_reducible(r, tol):
        return "reducible"
    return "dihedral" if is_binary_dihedral(r, tol) else "other-irreducible"


def scan(p, pin_meridian=True, n_seeds=200, rng_seed=0, tol=None):
    """Solve from ``n_seeds`` random traceless seeds and cluster the solutions.

    Deterministic given ``rng_seed``; clusters come back sorted by their
    representative's character.
    """
    tol = tol or PROFILES["default"]
    rng = np.random.default_rng(rng_seed)
    seeds = [qt.random_traceless(rng, p.n_generators) for _ in range(n_seeds)]

    def attempt(seed):
        try:
            return solve_from_seed(seed, p, pin_meridian, tol=tol)
        except NoConvergence as exc:
            return exc

    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(attempt, seeds))
    else:
        results = [attempt(s) for s in seeds]

    groups = []     # [representative, count]
    failures = []
    for res in results:
        if isinstance(res, NoConvergence):
            failures.append(res.residual)
            continue
        for g in groups:
            if float(np.max(np.abs(g[0].character - res.character))) < tol.cluster:
                g[1] += 1
                break
        else:
            groups.append([res, 1])

    clusters = []
    for rep, count in groups:
        kind = _classify(rep, tol)
        dim, gap = local_dimension(rep, p, tol)
        clusters.append(Cluster(rep, count, kind, dim,
                                _orbit_dimension(kind == "reducible", pin_meridian, rep.images),
                                gap))
    clusters.sort(key=lambda c: tuple(np.round(c.representative.character, 6)))
    return ConjugacyClassSet(clusters=clusters, n_seeds=n_seeds,
                             n_converged=n_seeds - len(failures),
                             pinned=pin_meridian, rng_seed=rng_seed, failures=failures)


@dataclass
class SimplicityVerdict:
    status: str                 # refuted | consistent
    witness: object = None      # index of a non-dihedral irreducible cluster
    n_seeds: int = 0
    note: str = ""

    def to_json(self):
        return {"status": self.status, "witness": self.witness,
                "n_seeds": self.n_seeds, "note": self.note}


def simplicity_verdict(scan_result):
    """Refuted if a non-dihedral irreducible cluster exists.

    "consistent" is one-sided numerical evidence, not a proof.
    """
    for k, c in enumerate(scan_result.clusters):
        if c.classification == "other-irreducible":
            return SimplicityVerdict("refuted", k, scan_result.n_seeds,
                                     "non-dihedral irreducible representation found")
    return SimplicityVerdict(
        "consistent", None, scan_result.n_seeds,
        f"no non-dihedral irreducible among {scan_result.n_converged} converged seeds; "
        "not a proof of simplicity")
