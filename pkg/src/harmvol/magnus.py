#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Magnus expansions of free groups in the truncated tensor algebra.

Series live in T̂/T̂_{D+1} over a rank-m basis X₀..X_{m−1}. For the curve the
free generators are ordered a₁, b₁, …, a_g, b_g and degree-2 results are
reported in the reduced loop basis L₀..L_{2g−1}."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from functools import cache

from attrs import define, field
from provide.foundation import logger

from harmvol.common.exceptions import (
    DimensionError,
    MissingWordDataError,
    NonUnitError,
    TruncationError,
)
from harmvol.config.defaults import DEFAULT_DEGREE, MIN_DEGREE
from harmvol.homology import (
    CurveModel,
    HClass,
    gram_matrix,
    loop,
    phi_action,
    phi_matrix,
    symplectic_basis,
)
from harmvol.tensor import Matrix, Tensor

Letter = tuple[int, int]
Triple = tuple[int, int, int]


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for gen, exp in letters:
        if exp not in (1, -1):
            raise DimensionError(f"Letter exponent must be ±1, got {exp}")
        if stack and stack[-1] == (gen, -exp):
            stack.pop()
        else:
            stack.append((gen, exp))
    return tuple(stack)


@define(frozen=True)
class Word:
    """Freely reduced word in a free group of rank ``rank``."""

    rank: int
    letters: tuple[Letter, ...] = field(default=(), converter=_free_reduce)

    def __attrs_post_init__(self) -> None:
        for gen, _ in self.letters:
            if not 0 <= gen < self.rank:
                raise DimensionError(f"Generator {gen} outside rank {self.rank}")

    @classmethod
    def identity(cls, rank: int) -> Word:
        return cls(rank)

    @classmethod
    def gen(cls, rank: int, index: int, exp: int = 1) -> Word:
        return cls(rank, ((index, exp),))

    def __mul__(self, other: Word) -> Word:
        if other.rank != self.rank:
            raise DimensionError(f"Cannot multiply words of rank {self.rank} and {other.rank}")
        return Word(self.rank, self.letters + other.letters)

    def inverse(self) -> Word:
        return Word(self.rank, tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def homology(self) -> tuple[int, ...]:
        counts = [0] * self.rank
        for g, e in self.letters:
            counts[g] += e
        return tuple(counts)

    def substitute(self, images: Sequence[Word]) -> Word:
        """Apply the endomorphism x_g ↦ images[g]."""
        if len(images) != self.rank:
            raise DimensionError(f"Need {self.rank} generator images, got {len(images)}")
        target = images[0].rank if images else self.rank
        out = Word.identity(target)
        for g, e in self.letters:
            out = out * (images[g] if e == 1 else images[g].inverse())
        return out


def product(words: Iterable[Word], rank: int) -> Word:
    out = Word.identity(rank)
    for w in words:
        out = out * w
    return out


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a b a⁻¹ b⁻¹."""
    return a * b * a.inverse() * b.inverse()


# -- truncated series ---------------------------------------------------------


@define(frozen=True)
class TruncSeries:
    dim: int
    bound: int
    parts: tuple[Tensor, ...] = field(converter=tuple)

    def __attrs_post_init__(self) -> None:
        if len(self.parts) != self.bound + 1:
            raise TruncationError(f"Expected {self.bound + 1} graded parts, got {len(self.parts)}")
        for d, part in enumerate(self.parts):
            if part.degree != d or part.dim != self.dim:
                raise DimensionError(f"Part {d} has degree {part.degree} over {part.dim}")

    @classmethod
    def zero(cls, dim: int, bound: int) -> TruncSeries:
        return cls(dim, bound, tuple(Tensor.zero(dim, d) for d in range(bound + 1)))

    @classmethod
    def one(cls, dim: int, bound: int) -> TruncSeries:
        return cls.zero(dim, bound).replace(0, Tensor.unit(dim))

    @classmethod
    def from_parts(cls, dim: int, bound: int, parts: Mapping[int, Tensor]) -> TruncSeries:
        base = cls.zero(dim, bound)
        for d, part in parts.items():
            if d <= bound:
                base = base.replace(d, part)
        return base

    def replace(self, degree: int, part: Tensor) -> TruncSeries:
        parts = list(self.parts)
        parts[degree] = part
        return TruncSeries(self.dim, self.bound, parts)

    def __getitem__(self, degree: int) -> Tensor:
        return self.parts[degree]

    def __add__(self, other: TruncSeries) -> TruncSeries:
        _check_compatible(self, other)
        return TruncSeries(self.dim, self.bound, tuple(a + b for a, b in zip(self.parts, other.parts, strict=True)))

    def __neg__(self) -> TruncSeries:
        return TruncSeries(self.dim, self.bound, tuple(-p for p in self.parts))

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        return self + (-other)

    def __mul__(self, other: TruncSeries) -> TruncSeries:
        return series_mul(self, other)

    def scale(self, c: int | Fraction) -> TruncSeries:
        return TruncSeries(self.dim, self.bound, tuple(p * c for p in self.parts))

    def is_one(self) -> bool:
        return self == TruncSeries.one(self.dim, self.bound)


def _check_compatible(a: TruncSeries, b: TruncSeries) -> None:
    if (a.dim, a.bound) != (b.dim, b.bound):
        raise TruncationError(f"Series over ({a.dim}, D={a.bound}) and ({b.dim}, D={b.bound}) do not mix")


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Graded convolution truncated above the shared bound."""
    _check_compatible(a, b)
    parts = []
    for k in range(a.bound + 1):
        acc = Tensor.zero(a.dim, k)
        for p in range(k + 1):
            if a.parts[p].is_zero() or b.parts[k - p].is_zero():
                continue
            acc = acc + a.parts[p].otimes(b.parts[k - p])
        parts.append(acc)
    return TruncSeries(a.dim, a.bound, parts)


def series_inv(a: TruncSeries) -> TruncSeries:
    """Inverse of 1 + u as Σ (−u)^m."""
    if a.parts[0] != Tensor.unit(a.dim):
        raise NonUnitError("Only series with constant term 1 are inverted")
    neg_u = -(a.replace(0, Tensor.zero(a.dim, 0)))
    result = TruncSeries.one(a.dim, a.bound)
    power = TruncSeries.one(a.dim, a.bound)
    for _ in range(a.bound):
        power = series_mul(power, neg_u)
        result = result + power
    return result


# -- expansions ---------------------------------------------------------------


@define(frozen=True)
class Expansion:
    """A Magnus expansion given by the images of the free generators."""

    rank: int
    bound: int
    images: tuple[TruncSeries, ...] = field(converter=tuple)
    inverse_images: tuple[TruncSeries, ...] = field(init=False, eq=False, repr=False)

    def __attrs_post_init__(self) -> None:
        if self.bound < MIN_DEGREE:
            raise TruncationError(f"Truncation degree must be at least {MIN_DEGREE}, got {self.bound}")
        if len(self.images) != self.rank:
            raise DimensionError(f"Expected {self.rank} generator images, got {len(self.images)}")
        for i, image in enumerate(self.images):
            if image.parts[0] != Tensor.unit(self.rank) or image.parts[1] != Tensor.basis(self.rank, (i,)):
                raise DimensionError(f"Image of generator {i} is not 1 + X_{i} modulo degree 2")
        object.__setattr__(self, "inverse_images", tuple(series_inv(s) for s in self.images))


def standard_expansion(rank: int, bound: int = DEFAULT_DEGREE) -> Expansion:
    """std(x_i) = 1 + X_i."""
    images = [
        TruncSeries.from_parts(rank, bound, {0: Tensor.unit(rank), 1: Tensor.basis(rank, (i,))}) for i in range(rank)
    ]
    return Expansion(rank, bound, images)


def generalized_expansion(rank: int, bound: int, corrections: Mapping[int, Sequence[Tensor]]) -> Expansion:
    """1 + X_i plus the given higher-degree tensors for generator i."""
    images = []
    for i in range(rank):
        parts: dict[int, Tensor] = {0: Tensor.unit(rank), 1: Tensor.basis(rank, (i,))}
        for extra in corrections.get(i, ()):
            if extra.degree < 2:
                raise DimensionError("Corrections must have degree at least 2")
            parts[extra.degree] = parts.get(extra.degree, Tensor.zero(rank, extra.degree)) + extra
        images.append(TruncSeries.from_parts(rank, bound, parts))
    return Expansion(rank, bound, images)


def evaluate(exp: Expansion, w: Word) -> TruncSeries:
    """θ(w) as the ordered product of generator images."""
    if w.rank != exp.rank:
        raise DimensionError(f"Word of rank {w.rank} evaluated in an expansion of rank {exp.rank}")
    out = TruncSeries.one(exp.rank, exp.bound)
    for g, e in w.letters:
        out = series_mul(out, exp.images[g] if e == 1 else exp.inverse_images[g])
    return out


def theta2(exp: Expansion, w: Word) -> Tensor:
    return evaluate(exp, w).parts[2]


# -- endomorphisms and τ ------------------------------------------------------


def _matmul(a: Matrix, b: Matrix) -> tuple[tuple[int, ...], ...]:
    size = len(a)
    return tuple(tuple(sum(a[r][m] * b[m][c] for m in range(size)) for c in range(size)) for r in range(size))


def _identity_matrix(size: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if r == c else 0 for c in range(size)) for r in range(size))


@define(frozen=True)
class EndoData:
    """|φ| on H (column a = image of X_a), optionally with generator-image words."""

    matrix: tuple[tuple[int, ...], ...]
    images: tuple[Word, ...] | None = None
    inverse_images: tuple[Word, ...] | None = None

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, rank: int) -> EndoData:
        gens = tuple(Word.gen(rank, i) for i in range(rank))
        return cls(_identity_matrix(rank), gens, gens)

    @classmethod
    def from_words(cls, images: Sequence[Word], inverse_images: Sequence[Word] | None = None) -> EndoData:
        rank = len(images)
        columns = [w.homology() for w in images]
        matrix = tuple(tuple(columns[a][b] for a in range(rank)) for b in range(rank))
        return cls(matrix, tuple(images), tuple(inverse_images) if inverse_images is not None else None)

    def inverse_matrix(self) -> tuple[tuple[int, ...], ...]:
        if self.inverse_images is None:
            raise MissingWordDataError("|φ|⁻¹ needs the inverse generator images")
        return EndoData.from_words(self.inverse_images).matrix

    def apply_inverse(self, w: Word) -> Word:
        if self.inverse_images is None:
            raise MissingWordDataError("Evaluating φ⁻¹ on words needs the inverse generator images")
        return w.substitute(self.inverse_images)

    def compose(self, other: EndoData) -> EndoData:
        """self ∘ other."""
        images = None
        inverse = None
        if self.images is not None and other.images is not None:
            images = tuple(w.substitute(self.images) for w in other.images)
        if self.inverse_images is not None and other.inverse_images is not None:
            inverse = tuple(w.substitute(other.inverse_images) for w in self.inverse_images)
        return EndoData(_matmul(self.matrix, other.matrix), images, inverse)


def tau1(exp: Expansion, endo: EndoData, gamma: Word) -> Tensor:
    """θ₂(γ) − |φ|θ₂(φ⁻¹(γ))."""
    pulled = endo.apply_inverse(gamma)
    return theta2(exp, gamma) - theta2(exp, pulled).map_legs(endo.matrix)


def tau1_words_cocycle_check(exp: Expansion, first: EndoData, second: EndoData, samples: Sequence[Word]) -> bool:
    """τ₁(φψ)(γ) = τ₁(φ)(γ) + |φ|τ₁(ψ)(φ⁻¹γ) on every sample word."""
    composite = first.compose(second)
    for gamma in samples:
        lhs = tau1(exp, composite, gamma)
        rhs = tau1(exp, first, gamma) + tau1(exp, second, first.apply_inverse(gamma)).map_legs(first.matrix)
        if lhs != rhs:
            logger.debug("Crossed-homomorphism identity failed", word=gamma.letters)
            return False
    return True


def _substitute_series(monomials: Tensor, values: Sequence[TruncSeries], dim: int, bound: int) -> TruncSeries:
    total = TruncSeries.zero(dim, bound)
    for idx, coeff in monomials:
        term = TruncSeries.one(dim, bound)
        for a in idx:
            term = series_mul(term, values[a])
        total = total + term.scale(coeff)
    return total


def tau_k(exp: Expansion, endo: EndoData, k: int) -> tuple[Tensor, ...]:
    """Degree-(k+1) part of T^θ(φ)∘|φ|⁻¹ on the basis X_c of H."""
    if exp.bound < k + 1:
        raise TruncationError(f"τ_{k} needs truncation degree at least {k + 1}, got {exp.bound}")
    if endo.images is None or endo.inverse_images is None:
        raise MissingWordDataError("τ_k needs generator-image words for φ and φ⁻¹")
    rank, bound = exp.rank, exp.bound
    one = TruncSeries.one(rank, bound)
    targets = [evaluate(exp, w) - one for w in endo.images]
    # T(X_a) is fixed degree by degree: T(X_a) = θ(φ(x_a)) − 1 − h_a(T(X)).
    current = [
        TruncSeries.from_parts(rank, bound, {1: Tensor.from_vectors(rank, [endo.matrix[b][a] for b in range(rank)])})
        for a in range(rank)
    ]
    for _ in range(bound):
        current = [
            targets[a]
            - sum(
                (
                    _substitute_series(exp.images[a].parts[d], current, rank, bound)
                    for d in range(2, bound + 1)
                    if not exp.images[a].parts[d].is_zero()
                ),
                TruncSeries.zero(rank, bound),
            )
            for a in range(rank)
        ]
    inverse = endo.inverse_matrix()
    out = []
    for c in range(rank):
        acc = Tensor.zero(rank, k + 1)
        for a in range(rank):
            if inverse[a][c]:
                acc = acc + current[a].parts[k + 1] * inverse[a][c]
        out.append(acc)
    return tuple(out)


# -- the curve ----------------------------------------------------------------


def _gen_a(rank: int, i: int) -> Word:
    return Word.gen(rank, 2 * (i - 1))


def _gen_b(rank: int, i: int) -> Word:
    return Word.gen(rank, 2 * (i - 1) + 1)


@cache
def ell_words(curve: CurveModel) -> tuple[Word, ...]:
    """Words for ℓ₀..ℓ_{n−1} over a₁, b₁, …, a_g, b_g."""
    g, n, rank = curve.g, curve.n, curve.rank
    words: list[Word | None] = [None] * n
    for m in range(g):
        words[2 * m + 1] = _gen_a(rank, g - m).inverse()
    words[0] = _gen_b(rank, g)

    def known(indices: Iterable[int]) -> Word:
        return product((_require(words, k) for k in indices), rank)

    for m in range(1, g):
        prefix = known(range(2 * m))
        odd = known(range(1, 2 * m, 2))
        words[2 * m] = prefix.inverse() * odd * _gen_b(rank, g - m)
    if curve.parity == "odd":
        words[2 * g] = known(range(2 * g)).inverse()
    else:
        words[2 * g + 1] = known(range(1, 2 * g, 2)).inverse()
        words[2 * g] = known(range(0, 2 * g, 2)).inverse()
    return tuple(_require(words, k) for k in range(n))


def _require(words: Sequence[Word | None], k: int) -> Word:
    w = words[k]
    if w is None:
        raise MissingWordDataError(f"No word for ℓ_{k} yet")
    return w


def loop_relations(curve: CurveModel) -> list[Word]:
    """Products of ell_words along each loop relation; all are the identity."""
    words = ell_words(curve)
    rank = curve.rank
    if curve.parity == "odd":
        return [product(words, rank)]
    return [product(words[0::2], rank), product(words[1::2], rank)]


def relator_word(curve: CurveModel) -> Word:
    """Π_{i=1}^{g} [a_i, b_i]."""
    rank = curve.rank
    return product((commutator(_gen_a(rank, i), _gen_b(rank, i)) for i in range(1, curve.g + 1)), rank)


@cache
def phi_endo(curve: CurveModel, power: int = 1) -> EndoData:
    """φ^power on the free generators: shift the loop words of the word scheme and substitute ell_words."""
    words = ell_words(curve)
    rank, n = curve.rank, curve.n

    def shifted(p: int) -> tuple[Word, ...]:
        out = []
        for loop_word in symplectic_basis(curve, "word").words:
            w = Word.identity(rank)
            for k, e in loop_word:
                piece = words[(k + p) % n]
                w = w * (piece if e > 0 else piece.inverse())
            out.append(w)
        return tuple(out)

    return EndoData.from_words(shifted(power % n), shifted(-power % n))


def word_tau1_defects(curve: CurveModel, degree: int = DEFAULT_DEGREE) -> list[int]:
    """Loop indices k where θ₂(ℓ_k) − |φ|θ₂(φ⁻¹ℓ_k), computed on words, disagrees with tau1_shift."""
    exp = standard_expansion(curve.rank, degree)
    endo = phi_endo(curve)
    defects = [
        k
        for k, w in enumerate(ell_words(curve))
        if to_loop_basis(curve, tau1(exp, endo, w)) != tau1_shift(curve, k)
    ]
    logger.debug("Compared word τ₁ with the shift rule", n=curve.n, degree=degree, defects=defects)
    return defects


def tau_k_defects(curve: CurveModel, degree: int = DEFAULT_DEGREE) -> list[int]:
    """Generators c where the degree-2 part of T(φ)∘|φ|⁻¹ disagrees with τ₁ evaluated on x_c."""
    exp = standard_expansion(curve.rank, degree)
    endo = phi_endo(curve)
    images = tau_k(exp, endo, 1)
    return [c for c in range(curve.rank) if images[c] != tau1(exp, endo, Word.gen(curve.rank, c))]


@cache
def generator_matrix(curve: CurveModel) -> tuple[tuple[int, ...], ...]:
    """Column a = reduced loop coordinates of the class of generator a."""
    classes = symplectic_basis(curve, "word").classes
    return tuple(tuple(classes[a].coords[b] for a in range(curve.rank)) for b in range(curve.rank))


def to_loop_basis(curve: CurveModel, t: Tensor) -> Tensor:
    return t.map_legs(generator_matrix(curve))


def intersection_tensor(curve: CurveModel) -> Tensor:
    """μ = Σ_i (A_iB_i − B_iA_i) in the loop basis."""
    basis = symplectic_basis(curve, "word")
    out = Tensor.zero(curve.rank, 2)
    for a, b in zip(basis.a, basis.b, strict=True):
        out = out + _pair(a, b) - _pair(b, a)
    return out


def _pair(x: HClass, y: HClass) -> Tensor:
    return Tensor.from_vectors(x.curve.rank, x.coords, y.coords)


@cache
def std2_table(curve: CurveModel) -> tuple[Tensor, ...]:
    """std₂(ℓ_k) for k = 0..n−1 from the words, in the loop basis."""
    exp = standard_expansion(curve.rank, MIN_DEGREE)
    values = tuple(to_loop_basis(curve, theta2(exp, w)) for w in ell_words(curve))
    logger.debug("Evaluated std₂ on loop words", n=curve.n, words=len(values))
    return values


def _tilde(curve: CurveModel, i: int) -> HClass:
    """L̃_i = L₀ + L₂ + … + L_{2i−2}."""
    out = HClass.zero(curve)
    for m in range(i):
        out = out + loop(curve, 2 * m)
    return out


def _step_even(curve: CurveModel, i: int) -> Tensor:
    """L_{2i−1}L̃_i − L̃_i(L_{2i−1} + L_{2i})."""
    tilde = _tilde(curve, i)
    return _pair(loop(curve, 2 * i - 1), tilde) - _pair(tilde, loop(curve, 2 * i - 1) + loop(curve, 2 * i))


def _lower_pairs(classes: Sequence[HClass], strict: bool = True) -> Tensor:
    """Σ_{j<i} X_i X_j (with i = j too when not strict)."""
    out = Tensor.zero(classes[0].curve.rank, 2)
    for i, x in enumerate(classes):
        for j in range(i if strict else i + 1):
            out = out + _pair(x, classes[j])
    return out


def std2_ell_closed(curve: CurveModel, k: int) -> Tensor:
    """Closed forms of std₂(ℓ_k) in the loop basis."""
    g, rank = curve.g, curve.rank
    k %= curve.n
    if k == 0:
        return Tensor.zero(rank, 2)
    if k % 2 == 1 and k <= 2 * g - 1:
        x = loop(curve, k)
        return _pair(x, x)
    if k % 2 == 0 and k <= 2 * g - 2:
        return _step_even(curve, k // 2)
    steps = sum((_step_even(curve, i) for i in range(1, g)), Tensor.zero(rank, 2))
    if curve.parity == "even" and k == 2 * g + 1:
        return _lower_pairs([loop(curve, 2 * i - 1) for i in range(1, g + 1)])
    if curve.parity == "even":
        # ℓ_{2g} = (ℓ₀ℓ₂⋯ℓ_{2g−2})⁻¹
        return _lower_pairs([loop(curve, 2 * m) for m in range(g)], strict=False) - steps
    # ℓ_{2g} = (ℓ₀ℓ₁⋯ℓ_{2g−1})⁻¹
    odd_loops = [loop(curve, 2 * i - 1) for i in range(1, g + 1)]
    squares = sum((_pair(x, x) for x in odd_loops), Tensor.zero(rank, 2))
    return _lower_pairs([loop(curve, m) for m in range(2 * g)], strict=False) - squares - steps


def tau1_shift(curve: CurveModel, k: int, power: int = 1) -> Tensor:
    """τ₁(φ^power)[ℓ_k] = std₂(ℓ_k) − |φ|^power std₂(ℓ_{k−power})."""
    table = std2_table(curve)
    n = curve.n
    return table[k % n] - table[(k - power) % n].map_legs(phi_matrix(curve, power % n))


@define(frozen=True)
class Tau1Map:
    """A linear map H → H⊗² given by the images of L₀..L_{2g−1}."""

    curve: CurveModel
    images: tuple[Tensor, ...] = field(converter=tuple)

    def __attrs_post_init__(self) -> None:
        if len(self.images) != self.curve.rank:
            raise DimensionError(f"Expected {self.curve.rank} images, got {len(self.images)}")

    @classmethod
    def zero(cls, curve: CurveModel) -> Tau1Map:
        return cls(curve, tuple(Tensor.zero(curve.rank, 2) for _ in range(curve.rank)))

    def apply(self, x: HClass) -> Tensor:
        out = Tensor.zero(self.curve.rank, 2)
        for c, xc in enumerate(x.coords):
            if xc:
                out = out + self.images[c] * xc
        return out

    def __add__(self, other: Tau1Map) -> Tau1Map:
        return Tau1Map(self.curve, tuple(a + b for a, b in zip(self.images, other.images, strict=True)))

    def __sub__(self, other: Tau1Map) -> Tau1Map:
        return Tau1Map(self.curve, tuple(a - b for a, b in zip(self.images, other.images, strict=True)))

    def is_zero(self) -> bool:
        return all(t.is_zero() for t in self.images)

    def act(self, power: int) -> Tau1Map:
        """φ^power · f : x ↦ |φ|^power f(|φ|^{−power} x)."""
        n = self.curve.n
        matrix = phi_matrix(self.curve, power % n)
        return Tau1Map(
            self.curve,
            tuple(
                self.apply(phi_action(HClass.basis(self.curve, c), -power)).map_legs(matrix)
                for c in range(self.curve.rank)
            ),
        )


def shift_cocycle(curve: CurveModel, power: int = 1) -> Tau1Map:
    """τ₁^std(φ^power) on the reduced basis."""
    return Tau1Map(curve, tuple(tau1_shift(curve, c, power) for c in range(curve.rank)))


def relation_defects(curve: CurveModel, tau: Tau1Map | None = None) -> list[int]:
    """Raw indices k where the linear map disagrees with the rule on ℓ_k."""
    tau = tau or shift_cocycle(curve)
    return [k for k in range(curve.n) if tau.apply(loop(curve, k)) != tau1_shift(curve, k)]


def twisted_power(tau: Tau1Map, m: int) -> Tau1Map:
    """Σ_{a<m} φ^a · τ, the crossed-homomorphism value at φ^m."""
    out = Tau1Map.zero(tau.curve)
    for a in range(m):
        out = out + tau.act(a)
    return out


def tau1_cocycle_check(curve: CurveModel, pairs: Iterable[tuple[int, int]] | None = None) -> bool:
    """τ₁(φ^{a+b}) = τ₁(φ^a) + φ^a·τ₁(φ^b) on the reduced basis."""
    n = curve.n
    pairs = list(pairs) if pairs is not None else [(a, b) for a in range(n) for b in range(n)]
    cache_: dict[int, Tau1Map] = {}

    def cocycle(power: int) -> Tau1Map:
        power %= n
        if power not in cache_:
            cache_[power] = shift_cocycle(curve, power)
        return cache_[power]

    for a, b in pairs:
        if cocycle(a + b) != cocycle(a) + cocycle(b).act(a):
            logger.debug("Crossed-homomorphism identity failed", a=a, b=b, n=n)
            return False
    return True


def tau1_published(curve: CurveModel, k: int) -> Tensor:
    """Printed closed forms of τ₁^std[ℓ_k], k = 0..n−1."""
    g, rank = curve.g, curve.rank
    k %= curve.n
    zero = Tensor.zero(rank, 2)

    def L(j: int) -> HClass:
        return loop(curve, j)

    def tilde_prime(i: int) -> HClass:
        return phi_action(_tilde(curve, i))

    def odd_step(i: int) -> Tensor:
        tp = tilde_prime(i)
        return _pair(L(2 * i), tp) - _pair(tp, L(2 * i) + L(2 * i + 1))

    def sq(x: HClass) -> Tensor:
        return _pair(x, x)

    if k == 1:
        return sq(L(1))
    if k % 2 == 1 and k <= 2 * g - 1:
        i = (k - 1) // 2
        return sq(L(k)) - odd_step(i)
    if k % 2 == 0 and 2 <= k <= 2 * g - 2:
        i = k // 2
        return _step_even(curve, i) - sq(L(k))
    if curve.parity == "even":
        top, last = L(2 * g), L(2 * g + 1)
        if k == 0:
            return -sum((_pair(L(2 * j), L(2 * i)) for i in range(1, g + 1) for j in range(i + 1, g + 1)), zero)
        if k == 2 * g:
            return _pair(last, top) - _pair(top, last) + sq(last) - sq(top)
        odd_pairs = sum(
            (_pair(L(2 * j - 1), L(2 * i - 1)) for i in range(1, g + 1) for j in range(i + 1, g + 1)), zero
        )
        return odd_pairs + _pair(top, last) - _pair(last, top) - sq(last)
    if k == 0:
        pairs = sum((_pair(L(j + 1), L(i + 1)) for i in range(1, 2 * g) for j in range(i + 1, 2 * g)), zero)
        steps = sum((odd_step(i) for i in range(1, g)), zero)
        squares = sum((sq(L(2 * i + 1)) for i in range(g)), zero)
        return -pairs + steps + squares
    pairs = sum((_pair(L(j), L(i)) for i in range(1, 2 * g) for j in range(i + 1, 2 * g)), zero)
    steps = sum((_step_even(curve, i) for i in range(1, g)), zero)
    squares = sum((sq(L(2 * i)) for i in range(g)), zero)
    return pairs - steps + squares - sq(L(2 * g))


def published_cocycle(curve: CurveModel) -> Tau1Map:
    return Tau1Map(curve, tuple(tau1_published(curve, c) for c in range(curve.rank)))


# -- Hom(H, H⊗²) ≅ Hom(H⊗³, Z) ------------------------------------------------


def hom_identify(curve: CurveModel, tau: Tau1Map) -> dict[Triple, int]:
    """Nonzero values of (a, b, c) ↦ ⟨L_a⊗L_b, τ(L_c)⟩ with ⟨x⊗y, u⊗v⟩ = (x,u)(y,v)."""
    gram = gram_matrix(curve)
    size = curve.rank
    values: dict[Triple, int] = {}
    for c, image in enumerate(tau.images):
        for a in range(size):
            for b in range(size):
                total = sum((coeff * gram[a][u] * gram[b][v] for (u, v), coeff in image), Fraction(0))
                if total:
                    if total.denominator != 1:
                        raise DimensionError(f"Non-integral pairing at {(a, b, c)}: {total}")
                    values[(a, b, c)] = int(total)
    return values


def s_sets(values: Mapping[Triple, int]) -> dict[int, list[Triple]]:
    """Group nonzero values into S_m = {triples with value m}."""
    groups: dict[int, list[Triple]] = {}
    for triple, value in values.items():
        if value:
            groups.setdefault(value, []).append(triple)
    return {m: sorted(triples) for m, triples in sorted(groups.items())}


S_SETS_EVEN: dict[int, list[Triple]] = {
    -1: [
        (0, 1, 2), (0, 2, 1), (0, 3, 3), (1, 0, 3), (1, 2, 2),
        (2, 0, 1), (2, 1, 3), (3, 1, 0), (3, 2, 3), (3, 3, 2),
    ],
    1: [
        (0, 0, 1), (0, 1, 3), (0, 2, 3), (1, 0, 2), (1, 2, 3), (2, 1, 2),
        (2, 2, 1), (2, 3, 3), (3, 0, 3), (3, 1, 2), (3, 3, 0),
    ],
}

S_SETS_ODD: dict[int, list[Triple]] = {
    -1: sorted(S_SETS_EVEN[-1] + [(0, 2, 0), (1, 2, 0), (2, 0, 0), (3, 0, 0)]),
    1: sorted(S_SETS_EVEN[1] + [(0, 0, 0), (1, 0, 0)]),
    3: [(2, 2, 0)],
}


def published_s_sets(parity: str) -> dict[int, list[Triple]]:
    """Genus-2 S-set tables as printed for n = 6 (even) and n = 5 (odd)."""
    return S_SETS_EVEN if parity == "even" else S_SETS_ODD


# 🌀🧮🔚
