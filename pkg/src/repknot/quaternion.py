"""Unit quaternion helpers on numpy arrays laid out as (w, x, y, z).

SU(2) is identified with the unit quaternions, so the trace of a matrix is
twice the real part.  Pure imaginary quaternions stand in for su(2).
"""
import numpy as np

ONE = np.array([1.0, 0.0, 0.0, 0.0])
I = np.array([0.0, 1.0, 0.0, 0.0])
J = np.array([0.0, 0.0, 1.0, 0.0])
K = np.array([0.0, 0.0, 0.0, 1.0])

# columns embed R^3 as the imaginary quaternions
IMAG = np.array([[0.0, 0.0, 0.0],
                 [1.0, 0.0, 0.0],
                 [0.0, 1.0, 0.0],
                 [0.0, 0.0, 1.0]])


def mul(p, q):
    pw, px, py, pz = p
    qw, qx, qy, qz = q
    return np.array([
        pw * qw - px * qx - py * qy - pz * qz,
        pw * qx + px * qw + py * qz - pz * qy,
        pw * qy - px * qz + py * qw + pz * qx,
        pw * qz + px * qy - py * qx + pz * qw,
    ])


def conj(q):
    return np.array([q[0], -q[1], -q[2], -q[3]])


def inv(q):
    return conj(q) / np.dot(q, q)


def normalize(q):
    return q / np.linalg.norm(q)


def left_matrix(q):
    """Matrix of p -> q p."""
    w, x, y, z = q
    return np.array([[w, -x, -y, -z],
                     [x, w, -z, y],
                     [y, z, w, -x],
                     [z, -y, x, w]])


def right_matrix(q):
    """Matrix of p -> p q."""
    w, x, y, z = q
    return np.array([[w, -x, -y, -z],
                     [x, w, z, -y],
                     [y, -z, w, x],
                     [z, y, -x, w]])


def exp_imag(v):
    """exp of the pure imaginary quaternion with vector part v."""
    theta = np.linalg.norm(v)
    if theta < 1e-300:
        return ONE.copy()
    s = np.sin(theta) / theta
    return np.array([np.cos(theta), s * v[0], s * v[1], s * v[2]])


def from_angle_axis(theta, axis):
    axis = np.asarray(axis, dtype=float)
    return np.concatenate([[np.cos(theta)], np.sin(theta) * axis])


def ad(q):
    """3x3 rotation matrix of the conjugation v -> q v q^-1 on Im H."""
    w, x, y, z = q / np.linalg.norm(q)
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ])


def word_product(word, images):
    """Evaluate a word (signed 1-based generator indices) on unit quaternions."""
    out = ONE.copy()
    for letter in word:
        q = images[abs(letter) - 1]
        out = mul(out, q if letter > 0 else conj(q))
    return out


def trace(q):
    return 2.0 * q[0]


def random_unit(rng, size=None):
    v = rng.standard_normal(4 if size is None else (size, 4))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def random_traceless(rng, size=None):
    v = rng.standard_normal(3 if size is None else (size, 3))
    v = v / np.linalg.norm(v, axis=-1, keepdims=True)
    if size is None:
        return np.concatenate([[0.0], v])
    return np.concatenate([np.zeros((size, 1)), v], axis=1)
