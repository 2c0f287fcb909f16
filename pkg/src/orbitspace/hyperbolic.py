"""Boundary actions of finitely generated Fuchsian groups.

Elements are stored as sign-normalized SL(2, R) matrices acting on the upper
half plane.  The ideal boundary R u {oo} is identified with the circle R/Z by
the Cayley transform ``x -> (x - i)/(x + i)`` followed by ``arg / 2pi``, so
``oo`` sits at angle 0 and the real line is traversed in increasing angle.
"""

from __future__ import annotations

import enum
import hashlib
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy.spatial import cKDTree

from . import tolerance
from .errors import DepthTooLarge, NotHyperbolic, UnknownGenerator

DEFAULT_DEPTH_CAP = 10**6

# ---------------------------------------------------------------------------
# matrices and words


def _normalize(a, b, c, d):
    det = a * d - b * c
    if not det > 0:
        raise ValueError(f"matrix has non-positive determinant {det!r}")
    r = math.sqrt(det)
    a, b, c, d = a / r, b / r, c / r, d / r
    scale = max(abs(a), abs(b), abs(c), abs(d))
    for x in (a, b, c, d):
        if abs(x) > 1e-12 * scale:
            if x < 0:
                a, b, c, d = -a, -b, -c, -d
            break
    return (a, b, c, d)


def reduce_word(word: Sequence[int]) -> tuple[int, ...]:
    """Freely reduce a word of signed generator indices."""
    out: list[int] = []
    for x in word:
        if x == 0:
            raise ValueError("generator index 0 is not allowed")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class MobiusElement:
    """An orientation-preserving isometry of H^2, remembered with its word."""

    matrix: tuple[float, float, float, float]
    word: tuple[int, ...] = ()

    @classmethod
    def from_matrix(cls, a, b, c, d, word=()) -> "MobiusElement":
        return cls(_normalize(float(a), float(b), float(c), float(d)), reduce_word(word))

    @classmethod
    def identity(cls) -> "MobiusElement":
        return cls((1.0, 0.0, 0.0, 1.0), ())

    @property
    def trace(self) -> float:
        return self.matrix[0] + self.matrix[3]

    def as_array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=float).reshape(2, 2)

    def inverse(self) -> "MobiusElement":
        a, b, c, d = self.matrix
        return MobiusElement(_normalize(d, -b, -c, a), invert_word(self.word))

    def __matmul__(self, other: "MobiusElement") -> "MobiusElement":
        return compose(self, other)

    def __pow__(self, n: int) -> "MobiusElement":
        base = self if n >= 0 else self.inverse()
        out = MobiusElement.identity()
        for _ in range(abs(n)):
            out = compose(out, base)
        return out

    def act_real(self, x: float) -> float:
        """Action on R u {oo}; ``math.inf`` stands for the point at infinity."""
        a, b, c, d = self.matrix
        if math.isinf(x):
            return math.inf if c == 0 else a / c
        den = c * x + d
        if den == 0:
            return math.inf
        return (a * x + b) / den

    def act_circle(self, angle: float) -> float:
        return float(circle_action(np.asarray(self.disk_coefficients()), angle))

    def disk_coefficients(self) -> tuple[complex, complex]:
        """(alpha, beta) of the conjugate disk map w -> (alpha w + beta)/(conj(beta) w + conj(alpha))."""
        a, b, c, d = self.matrix
        return (complex(a + d, b - c) / 2, complex(a - d, -(b + c)) / 2)

    def distance(self, other: "MobiusElement") -> float:
        """Projective sup-norm distance between matrices."""
        x = np.array(self.matrix)
        y = np.array(other.matrix)
        return float(min(np.abs(x - y).max(), np.abs(x + y).max()))

    def is_identity(self) -> bool:
        return self.distance(MobiusElement.identity()) < tolerance.eps()

    def commutes_with(self, other: "MobiusElement") -> bool:
        p = np.array((self @ other).matrix)
        q = np.array((other @ self).matrix)
        scale = max(1.0, np.abs(p).max())
        return float(min(np.abs(p - q).max(), np.abs(p + q).max())) < tolerance.eps() * scale


def compose(g: MobiusElement, h: MobiusElement) -> MobiusElement:
    """Matrix product g*h (apply h first), renormalized, with reduced word."""
    a1, b1, c1, d1 = g.matrix
    a2, b2, c2, d2 = h.matrix
    return MobiusElement(
        _normalize(
            a1 * a2 + b1 * c2,
            a1 * b2 + b1 * d2,
            c1 * a2 + d1 * c2,
            c1 * b2 + d1 * d2,
        ),
        reduce_word(g.word + h.word),
    )


# ---------------------------------------------------------------------------
# classification and fixed points


class Kind(enum.Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


class Classification(NamedTuple):
    kind: Kind
    marginal: bool = False


def classify(g: MobiusElement) -> Classification:
    eps = tolerance.eps()
    if g.is_identity():
        return Classification(Kind.IDENTITY)
    t = abs(g.trace)
    if t > 2 + eps:
        return Classification(Kind.HYPERBOLIC)
    if t < 2 - eps:
        return Classification(Kind.ELLIPTIC)
    return Classification(Kind.PARABOLIC, marginal=(t != 2.0))


def is_hyperbolic(g: MobiusElement) -> bool:
    return classify(g).kind is Kind.HYPERBOLIC


@dataclass(frozen=True, order=True)
class CirclePoint:
    """A point of the universal circle R/Z."""

    angle: float

    def __post_init__(self):
        if not 0.0 <= self.angle < 1.0:
            raise ValueError(f"angle {self.angle!r} not in [0, 1)")

    @classmethod
    def wrap(cls, x: float) -> "CirclePoint":
        return cls(wrap_angle(x))

    def to_real(self) -> float:
        return angle_to_real(self.angle)


def wrap_angle(x):
    """Reduce mod 1 into [0, 1); guards the ``-tiny % 1 == 1.0`` corner."""
    y = np.mod(x, 1.0)
    if np.ndim(y) == 0:
        y = float(y)
        return 0.0 if y >= 1.0 else y
    y[y >= 1.0] = 0.0
    return y


def real_to_angle(x: float) -> float:
    if math.isinf(x):
        return 0.0
    return wrap_angle(1.0 - math.atan2(1.0, x) / math.pi)


def angle_to_real(theta: float) -> float:
    if theta == 0.0:
        return math.inf
    return -1.0 / math.tan(math.pi * theta)


def _real_fixed_points(g: MobiusElement) -> tuple[float, float]:
    """Fixed points (attracting, repelling) on R u {oo}."""
    a, b, c, d = g.matrix
    if g.trace < 0:
        a, b, c, d = -a, -b, -c, -d
    tr = a + d
    root = math.sqrt(tr * tr - 4.0)
    if abs(c) < 1e-14 * max(abs(a), abs(d), 1.0):
        # c == 0: fixed points oo and b/(d - a); derivative at the finite one is a/d
        finite = b / (d - a)
        if abs(a) < abs(d):
            return finite, math.inf
        return math.inf, finite
    # numerically stable roots of c x^2 + (d - a) x - b = 0
    p = a - d
    q = p + math.copysign(root, p) if p != 0 else root
    x1 = q / (2 * c)
    x2 = -2 * b / q if q != 0 else (p - root) / (2 * c)
    if abs(c * x1 + d) > 1.0:
        return x1, x2
    return x2, x1


def axis_endpoints(g: MobiusElement) -> tuple[CirclePoint, CirclePoint]:
    """(attracting, repelling) fixed points of a hyperbolic element on the circle."""
    if not is_hyperbolic(g):
        raise NotHyperbolic(f"element with trace {g.trace:.6g} is not hyperbolic")
    att, rep = _real_fixed_points(g)
    return CirclePoint(real_to_angle(att)), CirclePoint(real_to_angle(rep))


def real_axis_endpoints(g: MobiusElement) -> tuple[float, float]:
    """(attracting, repelling) fixed points on R u {oo}."""
    if not is_hyperbolic(g):
        raise NotHyperbolic(f"element with trace {g.trace:.6g} is not hyperbolic")
    return _real_fixed_points(g)


# ---------------------------------------------------------------------------
# circle action and lifts to R


def _continuous_lift(alpha, beta, x):
    """A continuous degree-one lift of the circle action, vectorized over everything."""
    ratio = beta / alpha
    phase = np.exp(-2j * np.pi * np.asarray(x, dtype=float))
    return x + (np.angle(alpha) + np.angle(1.0 + ratio * phase)) / np.pi


def _canonical_shift(alpha, beta):
    return np.floor(_continuous_lift(alpha, beta, 0.0))


def canonical_lift_values(alpha, beta, x):
    """The canonical lift lambda(g, x), normalized so lambda(g, 0) lies in [0, 1)."""
    return _continuous_lift(alpha, beta, x) - _canonical_shift(alpha, beta)


def circle_action(coeffs, theta):
    alpha, beta = coeffs[..., 0], coeffs[..., 1]
    return wrap_angle(_continuous_lift(alpha, beta, theta))


@dataclass(frozen=True)
class LiftedCircleMap:
    """The lift x -> lambda(base, x) + offset of a boundary action to R."""

    base: MobiusElement
    offset: int = 0

    def __call__(self, x):
        return evaluate(self, x)

    def inverse(self) -> "LiftedCircleMap":
        inv = self.base.inverse()
        # lambda(g^-1) is inverse to lambda(g) up to an integer; find it at one point
        y = canonical_lift_values(*_coeffs(self.base), 0.0) + self.offset
        back = canonical_lift_values(*_coeffs(inv), y)
        return LiftedCircleMap(inv, int(round(0.0 - float(back))))

    def shifted(self, k: int) -> "LiftedCircleMap":
        return LiftedCircleMap(self.base, self.offset + k)


def _coeffs(g: MobiusElement):
    alpha, beta = g.disk_coefficients()
    return np.complex128(alpha), np.complex128(beta)


def lift(g: MobiusElement, k: int = 0) -> LiftedCircleMap:
    return LiftedCircleMap(g, int(k))


def evaluate(ghat: LiftedCircleMap, x):
    out = canonical_lift_values(*_coeffs(ghat.base), x) + ghat.offset
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# groups, words, enumeration


def _letter(i: int) -> str:
    base = chr(ord("a") + abs(i) - 1)
    return base if i > 0 else base.upper()


@dataclass(frozen=True)
class GroupSpec:
    """A finitely generated group given by generator matrices."""

    generators: tuple[MobiusElement, ...]
    name: str = "custom"
    model: str = "upper half-plane; boundary chart x -> arg((x-i)/(x+i))/2pi"

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a group needs at least one generator")
        if len(self.generators) > 26:
            raise ValueError("at most 26 generators are supported")
        for i, g in enumerate(self.generators):
            if g.is_identity():
                raise ValueError(f"generator {_letter(i + 1)} is the identity")

    @classmethod
    def from_matrices(cls, matrices, name="custom") -> "GroupSpec":
        gens = tuple(
            MobiusElement.from_matrix(*np.ravel(m), word=(i + 1,)) for i, m in enumerate(matrices)
        )
        return cls(gens, name=name)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def fingerprint(self) -> str:
        text = ";".join(",".join(f"{x:.15e}" for x in g.matrix) for g in self.generators)
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def letters(self) -> list[int]:
        """Signed generator indices in enumeration order: a, A, b, B, ..."""
        out = []
        for i in range(1, self.rank + 1):
            out += [i, -i]
        return out

    def element(self, word) -> MobiusElement:
        if isinstance(word, str):
            word = parse_word(word, self.rank)
        out = MobiusElement.identity()
        for x in word:
            g = self.generators[abs(x) - 1]
            out = compose(out, g if x > 0 else g.inverse())
        return out

    def format_word(self, word: Sequence[int]) -> str:
        return format_word(word)


def format_word(word: Sequence[int]) -> str:
    return "".join(_letter(x) for x in word) or "1"


_SUPERSCRIPT_INVERSE = "⁻¹"


def parse_word(text: str, rank: int) -> tuple[int, ...]:
    """Parse ``aB``, ``ab^-1``, ``ab⁻¹``, ``a^3b`` into signed indices.

    Lowercase letters are generators, uppercase their inverses; ``1`` is the
    empty word.  Whitespace, ``*`` and ``.`` are ignored.
    """
    s = text.replace(_SUPERSCRIPT_INVERSE, "^-1")
    s = "".join(ch for ch in s if ch not in " \t*.")
    if s in ("", "1", "e"):
        return ()
    out: list[int] = []
    i = 0
    while i < len(s):
        ch = s[i]
        if not ch.isalpha() or not ch.isascii():
            raise UnknownGenerator(f"unexpected character {ch!r} at position {i} in {text!r}")
        index = ord(ch.lower()) - ord("a") + 1
        if index > rank:
            raise UnknownGenerator(f"generator {ch!r} not in a group of rank {rank}")
        x = index if ch.islower() else -index
        i += 1
        power = 1
        if i < len(s) and s[i] == "^":
            j = i + 1
            if j < len(s) and s[j] in "+-":
                j += 1
            k = j
            while k < len(s) and s[k].isdigit():
                k += 1
            if k == j:
                raise UnknownGenerator(f"malformed exponent in {text!r}")
            power = int(s[i + 1 : k])
            i = k
        out += [x if power > 0 else -x] * abs(power)
    return reduce_word(out)


def projected_count(rank: int, depth: int) -> int:
    """Number of freely reduced words of length <= depth in a free group of the given rank."""
    total, level = 1, 2 * rank
    for _ in range(depth):
        total += level
        level *= 2 * rank - 1
    return total


@dataclass(frozen=True)
class ElementTable:
    """Enumerated group elements as parallel arrays (canonical order)."""

    matrices: np.ndarray  # shape (N, 4)
    words: tuple[tuple[int, ...], ...]
    depth: int
    fingerprint: str
    alpha: np.ndarray = field(init=False, repr=False, compare=False)
    beta: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m = self.matrices
        a, b, c, d = m[:, 0], m[:, 1], m[:, 2], m[:, 3]
        object.__setattr__(self, "alpha", ((a + d) + 1j * (b - c)) / 2)
        object.__setattr__(self, "beta", ((a - d) - 1j * (b + c)) / 2)

    def __len__(self):
        return len(self.words)

    def element(self, i: int) -> MobiusElement:
        return MobiusElement(tuple(float(x) for x in self.matrices[i]), self.words[i])

    def lift_values(self, x, offsets=0):
        """lambda(h, x) + offset for every element h (x broadcast against elements)."""
        return canonical_lift_values(self.alpha, self.beta, x) + offsets

    def circle_images(self, theta):
        return wrap_angle(_continuous_lift(self.alpha, self.beta, theta))

    def commuting_mask(self, g: MobiusElement) -> np.ndarray:
        """Elements commuting with g (the centralizer, up to tolerance)."""
        h = self.matrices.reshape(-1, 2, 2)
        G = g.as_array()
        p = h @ G
        q = G @ h
        scale = np.maximum(1.0, np.abs(p).reshape(len(h), -1).max(axis=1))
        diff = np.minimum(
            np.abs(p - q).reshape(len(h), -1).max(axis=1),
            np.abs(p + q).reshape(len(h), -1).max(axis=1),
        )
        return diff < tolerance.eps() * scale


def _sign_normalize_rows(m: np.ndarray) -> np.ndarray:
    det = m[:, 0] * m[:, 3] - m[:, 1] * m[:, 2]
    m = m / np.sqrt(det)[:, None]
    scale = np.abs(m).max(axis=1, keepdims=True)
    nonzero = np.abs(m) > 1e-12 * scale
    first = np.argmax(nonzero, axis=1)
    sign = np.sign(m[np.arange(len(m)), first])
    return m * sign[:, None]


def _dedup_keep_first(m: np.ndarray) -> np.ndarray:
    """Indices of rows that are projectively distinct from every earlier row."""
    unit = m / np.linalg.norm(m, axis=1, keepdims=True)
    keep = np.ones(len(m), dtype=bool)
    tree = cKDTree(unit)
    pairs = tree.query_pairs(r=1e-6, p=np.inf, output_type="ndarray")
    if len(pairs):
        eps = tolerance.eps()
        i, j = pairs.min(axis=1), pairs.max(axis=1)
        x, y = m[i], m[j]
        scale = np.maximum(1.0, np.maximum(np.abs(x).max(axis=1), np.abs(y).max(axis=1)))
        dist = np.minimum(np.abs(x - y).max(axis=1), np.abs(x + y).max(axis=1))
        same = dist < eps * scale
        keep[j[same]] = False
    return np.flatnonzero(keep)


class _MemoryStore:
    def __init__(self):
        self._tables = {}

    def load(self, fingerprint, depth):
        return self._tables.get((fingerprint, depth))

    def save(self, table):
        self._tables[(table.fingerprint, table.depth)] = table


_store = _MemoryStore()


def set_table_store(store):
    """Install a table store (anything with ``load(fp, depth)`` and ``save(table)``)."""
    global _store
    previous = _store
    _store = store
    return previous


def enumerate_table(G: GroupSpec, depth: int, cap: int = DEFAULT_DEPTH_CAP) -> ElementTable:
    if depth < 0:
        raise ValueError("depth must be non-negative")
    count = projected_count(G.rank, depth)
    if count > cap:
        raise DepthTooLarge(f"depth {depth} would enumerate {count} words (cap {cap})")
    cached = _store.load(G.fingerprint, depth)
    if cached is not None:
        return cached

    letters = G.letters()
    gens = np.array([G.element((x,)).matrix for x in letters]).reshape(-1, 2, 2)
    words: list[tuple[int, ...]] = [()]
    blocks = [np.array([[1.0, 0.0, 0.0, 1.0]])]
    level_words: list[tuple[int, ...]] = [()]
    level = blocks[0].reshape(-1, 2, 2)
    for _ in range(depth):
        prod = np.einsum("mij,njk->mnik", level, gens)
        new_words, rows = [], []
        for wi, w in enumerate(level_words):
            last = w[-1] if w else 0
            for li, x in enumerate(letters):
                if x != -last:
                    new_words.append(w + (x,))
                    rows.append(wi * len(letters) + li)
        level = prod.reshape(-1, 2, 2)[rows]
        det = level[:, 0, 0] * level[:, 1, 1] - level[:, 0, 1] * level[:, 1, 0]
        level = level / np.sqrt(det)[:, None, None]
        level_words = new_words
        words += new_words
        blocks.append(level.reshape(-1, 4))

    mats = _sign_normalize_rows(np.concatenate(blocks))
    keep = _dedup_keep_first(mats)
    table = ElementTable(mats[keep], tuple(words[i] for i in keep), depth, G.fingerprint)
    _store.save(table)
    return table


def enumerate_elements(G: GroupSpec, depth: int, cap: int = DEFAULT_DEPTH_CAP) -> list[MobiusElement]:
    """All reduced words of length <= depth, deduplicated projectively, in canonical order."""
    table = enumerate_table(G, depth, cap)
    return [table.element(i) for i in range(len(table))]
