"""Constructive completions of upper triangular operator matrices.

At a point λ outside an intersection spectrum the builder picks the case of
the matching proof, places left invertible blocks J on the superdiagonal (and
in one column for the Fredholm target), and predicts the nullity and
deficiency of the completed matrix minus λ.

Every J is a basis assignment: kernel generator p of D_j - λ is sent to the
slot vector e_{w_p} of D_i - λ, position by position. Because generators and
slots are biorthogonal to their pivots, the completed matrix decouples into
one small incidence matrix per position, which is what the bookkeeping
below ranks.
"""
from dataclasses import dataclass, field, replace
from enum import Enum
import logging

from opMatrix.counts import ExtendedCount, INF, ZERO, total
from opMatrix.errors import NoCompletionExists, HypothesisUnsatisfied, VariantError
from opMatrix.linalg import exact_rank
from opMatrix.models import kernel_basis, cokernel_slots
from opMatrix.spectra import SpectrumKind
from opMatrix.utils.math import RationalComplex

from .engine import (
    DiagonalTuple, VariantFlag, resolve_variant, in_intersection, hypothesis_holds,
)
from .logger import get_logger


class Target(Enum):
    LEFT_FREDHOLM = 'LeftFredholm'
    RIGHT_FREDHOLM = 'RightFredholm'
    FREDHOLM = 'Fredholm'
    LEFT_WEYL = 'LeftWeyl'
    RIGHT_WEYL = 'RightWeyl'

    @classmethod
    def parse(cls, text):
        for target in cls:
            if target.value.lower() == text.lower():
                return target
        raise VariantError(f"unknown completion target {text!r}")

    @classmethod
    def for_kind(cls, kind):
        return _TARGET_OF_KIND[kind]

    @property
    def kind(self):
        return _KIND_OF_TARGET[self]

    @property
    def is_right(self):
        return self in (Target.RIGHT_FREDHOLM, Target.RIGHT_WEYL)

    @property
    def mirrored(self):
        return _MIRROR.get(self, self)

    def achieved(self, alpha, beta, closed):
        left_fredholm = alpha.is_finite and closed
        right_fredholm = beta.is_finite
        if self is Target.LEFT_FREDHOLM:
            return left_fredholm
        if self is Target.RIGHT_FREDHOLM:
            return right_fredholm
        if self is Target.FREDHOLM:
            return left_fredholm and right_fredholm
        if self is Target.LEFT_WEYL:
            return left_fredholm and alpha <= beta
        return right_fredholm and beta <= alpha


_KIND_OF_TARGET = {
    Target.LEFT_FREDHOLM: SpectrumKind.LE,
    Target.RIGHT_FREDHOLM: SpectrumKind.RE,
    Target.FREDHOLM: SpectrumKind.E,
    Target.LEFT_WEYL: SpectrumKind.LW,
    Target.RIGHT_WEYL: SpectrumKind.RW,
}
_TARGET_OF_KIND = {kind: target for target, kind in _KIND_OF_TARGET.items()}
_MIRROR = {
    Target.LEFT_FREDHOLM: Target.RIGHT_FREDHOLM,
    Target.RIGHT_FREDHOLM: Target.LEFT_FREDHOLM,
    Target.LEFT_WEYL: Target.RIGHT_WEYL,
    Target.RIGHT_WEYL: Target.LEFT_WEYL,
}
_MIRROR_VARIANT = {
    VariantFlag.ALPHA_ONE_INFINITE: VariantFlag.BETA_N_INFINITE,
    VariantFlag.BETA_N_INFINITE: VariantFlag.ALPHA_ONE_INFINITE,
}


@dataclass(frozen=True)
class CaseTag:
    """Case of the proof the plan follows; ``l`` and ``k`` are 1-based diagonal indices."""
    target: Target
    label: str
    l: int = None
    k: int = None
    via_dual: bool = False
    fallback: str = None

    def text(self):
        marks = []
        if self.l is not None:
            marks.append(f"l={self.l}")
        if self.k is not None:
            marks.append(f"k={self.k}")
        suffix = f" ({', '.join(marks)})" if marks else ''
        return f"{self.label}{suffix}"

    def to_json(self):
        return {
            "target": self.target.value,
            "label": self.label,
            "l": self.l,
            "k": self.k,
            "via_dual": self.via_dual,
            "fallback": self.fallback,
        }


@dataclass(frozen=True)
class ZeroBlock:
    row: int
    col: int

    def to_json(self):
        return {"block": [self.row, self.col], "kind": "zero"}


@dataclass(frozen=True)
class JBlock:
    """Sends kernel generator p of D_col - λ to slot p of D_row - λ for every p < count."""
    row: int
    col: int
    role: str
    count: ExtendedCount

    def to_json(self, kernel, slots, preview=4):
        shown = range(self.count.value if self.count.is_finite else preview)
        return {
            "block": [self.row, self.col],
            "kind": self.role,
            "count": self.count.to_json(),
            "assignments": [[kernel.pivot(p), slots.slot(p)] for p in shown],
            "continues": self.count.is_infinite,
        }


@dataclass
class CompletionPlan:
    """Structured completion A of T_n^d(A) at one λ.

    ``blocks`` holds the J blocks by 1-based (row, col); every other strictly
    upper block is zero. ``kernels[j]`` and ``slots[j]`` describe N(D_j - λ)
    and the cokernel slots of D_j - λ (0-based j).
    """
    t: DiagonalTuple
    lam: RationalComplex
    case: CaseTag
    blocks: dict
    kernels: tuple
    slots: tuple
    codim_increments: tuple = ()
    case_alpha: ExtendedCount = None
    warnings: tuple = ()

    @property
    def n(self):
        return self.t.n

    def block(self, i, j):
        return self.blocks.get((i, j), ZeroBlock(i, j))

    def j_blocks(self):
        return [self.blocks[key] for key in sorted(self.blocks)]

    def to_json(self):
        blocks = []
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                block = self.block(i, j)
                if isinstance(block, JBlock):
                    blocks.append(block.to_json(self.kernels[j - 1], self.slots[i - 1]))
                else:
                    blocks.append(block.to_json())
        return {
            "models": self.t.expression(),
            "lambda": str(self.lam),
            "case": self.case.to_json(),
            "blocks": blocks,
            "codim_increments": [[i, j, c.to_json()] for i, j, c in self.codim_increments],
            "case_alpha": None if self.case_alpha is None else self.case_alpha.to_json(),
            "warnings": list(self.warnings),
        }


@dataclass(frozen=True)
class PredictedInvariants:
    alpha: ExtendedCount
    beta: ExtendedCount
    range_closed: bool

    @property
    def index(self):
        return self.alpha - self.beta

    def to_json(self):
        return {"alpha": self.alpha.to_json(), "beta": self.beta.to_json(),
                "range_closed": self.range_closed}


def _min(a, b):
    return a if a <= b else b


def _describe_tuple(t, lam):
    kernels = tuple(kernel_basis(model, lam) for model in t.models)
    slots = tuple(cokernel_slots(model, lam) for model in t.models)
    return kernels, slots


def assemble_plan(t, lam, case, placements, kernels=None, slots=None):
    """Plan with J blocks at the given (row, col, role) placements; empty assignments become zero blocks."""
    lam = RationalComplex.coerce(lam)
    if kernels is None or slots is None:
        kernels, slots = _describe_tuple(t, lam)
    blocks, increments = {}, []
    for row, col, role in placements:
        if not 1 <= row < col <= t.n:
            raise VariantError(f"block ({row}, {col}) is not strictly upper triangular")
        count = _min(kernels[col - 1].count, slots[row - 1].count)
        if count == ZERO:
            continue
        blocks[(row, col)] = JBlock(row, col, role, count)
        increments.append((row, col, slots[row - 1].count.saturating_sub(count)))
    return CompletionPlan(t, lam, case, blocks, kernels, slots, tuple(increments))


def position_horizon(plan):
    """First position from which every generator, slot and assignment pattern is constant."""
    marks = [0]
    for description in plan.kernels + plan.slots:
        if description.count.is_finite:
            marks.append(description.count.value)
    for block in plan.blocks.values():
        if block.count.is_finite:
            marks.append(block.count.value)
    return max(marks)


def _present(count, position):
    return count.is_infinite or position < count.value


def incidence_at(plan, position):
    """Rows (slot rows), columns (generator blocks) and 0/1 incidence at one position."""
    gens = [j for j in range(1, plan.n + 1) if _present(plan.kernels[j - 1].count, position)]
    slots = [i for i in range(1, plan.n + 1) if _present(plan.slots[i - 1].count, position)]
    matrix = []
    for i in slots:
        row = []
        for j in gens:
            block = plan.blocks.get((i, j))
            row.append(1 if block is not None and _present(block.count, position) else 0)
        matrix.append(row)
    return slots, gens, matrix


def _rank(matrix):
    return exact_rank(matrix) if matrix and matrix[0] else 0


def predicted_invariants(t, plan, lam=None):
    """Nullity and deficiency of the completed matrix minus λ from the position-wise incidence ranks."""
    horizon = position_horizon(plan)
    alpha, beta = 0, 0
    for position in range(horizon):
        slots, gens, matrix = incidence_at(plan, position)
        rank = _rank(matrix)
        alpha += len(gens) - rank
        beta += len(slots) - rank
    slots, gens, matrix = incidence_at(plan, horizon)
    tail_gens = [j for j in gens if plan.kernels[j - 1].count.is_infinite]
    tail_slots = [i for i in slots if plan.slots[i - 1].count.is_infinite]
    tail = [[row[gens.index(j)] for j in tail_gens] for row, i in zip(matrix, slots) if i in tail_slots]
    tail_rank = _rank(tail)
    alpha = INF if len(tail_gens) > tail_rank else ExtendedCount(alpha)
    closed = all(model.data_at(plan.lam).range_closed for model in t.models)
    beta = INF if (len(tail_slots) > tail_rank or not closed) else ExtendedCount(beta)
    return PredictedInvariants(alpha, beta, closed)


def _classify_left(target, datas):
    n = len(datas)
    left = [d.left_fredholm for d in datas]
    for k in range(1, n):
        if all(left[:k]) and datas[k - 1].beta.is_infinite:
            return ('Ω_1' if k == 1 else 'Ω_k'), None, k
    if all(left):
        if target is Target.LEFT_FREDHOLM:
            return 'Ω_n', None, n
        if total(d.alpha for d in datas) <= total(d.beta for d in datas):
            return 'Ω_n', None, n
    raise NoCompletionExists(f"no {target.value} case applies")


def _classify_fredholm(datas):
    n = len(datas)
    bad = [s for s, d in enumerate(datas, start=1) if not d.fredholm]
    if not bad:
        return 'trivial', None, None
    l, k = bad[0], bad[-1]
    d_l, d_k = datas[l - 1], datas[k - 1]
    if not (l < k and d_l.left_fredholm and d_l.beta.is_infinite
            and d_k.right_fredholm and d_k.alpha.is_infinite):
        raise NoCompletionExists("no Fredholm case applies")
    if l == 1:
        return ('Ω_1n' if k == n else 'Ω_1k'), l, k
    return ('Ω_ln' if k == n else 'Ω_lk'), l, k


def _case_placements(case, n):
    if case.label in ('Ω_n', 'trivial'):
        return []
    if case.target is Target.FREDHOLM:
        superdiagonal = [(i, i + 1, 'superdiagonal') for i in range(case.l, case.k - 1)]
        column = [(i, case.k, 'column') for i in range(case.l, case.k)]
        return superdiagonal + column
    return [(i, i + 1, 'superdiagonal') for i in range(case.k, n)]


def _classical_placements(n):
    return [(i, i + 1, 'superdiagonal') for i in range(1, n)]


def _case_alpha(case, datas):
    alpha = [d.alpha for d in datas]
    if case.label in ('Ω_n', 'trivial'):
        return total(alpha)
    if case.target is Target.FREDHOLM:
        return total(alpha[:case.l]) + total(alpha[case.k:])
    return total(alpha[:case.k])


def _dual_plan(plan, t, target):
    """Transpose a plan built on the reversed dual tuple back onto ``t``."""
    n = t.n
    case = replace(plan.case, target=target, via_dual=True)
    placements = [(n + 1 - block.col, n + 1 - block.row, block.role) for block in plan.j_blocks()]
    mirrored = assemble_plan(t, plan.lam, case, placements)
    mirrored.warnings = plan.warnings
    return mirrored


class CompletionBuilder:
    def __init__(self, log_level='INFO'):
        self.log_level = log_level
        self.logger = get_logger(self.__class__.__name__, getattr(logging, log_level))

    def _check_point(self, t, lam, target, variant, check_hypothesis):
        datas = t.data_at(lam)
        if in_intersection(target.kind, datas):
            raise NoCompletionExists(
                f"{lam} lies in the intersection of the {target.kind.value} spectra; no completion exists")
        if check_hypothesis and not hypothesis_holds(target.kind, variant, datas):
            raise HypothesisUnsatisfied(f"{variant.value} hypothesis fails at {lam}")
        return datas

    def classify_case(self, t, lam, target, variant=None, check_hypothesis=True):
        try:
            lam = RationalComplex.coerce(lam)
            variant = resolve_variant(target.kind, variant)
            datas = self._check_point(t, lam, target, variant, check_hypothesis)
            if target.is_right:
                case = self.classify_case(t.reversed_dual(), lam, target.mirrored,
                                          _MIRROR_VARIANT.get(variant, variant), check_hypothesis=False)
                return replace(case, target=target, via_dual=True)
            if target is Target.FREDHOLM:
                label, l, k = _classify_fredholm(datas)
            else:
                label, l, k = _classify_left(target, datas)
            case = CaseTag(target, label, l, k)
            self.logger.debug(f"Case {case.text()} for {target.value} at {lam}")
            return case
        except (NoCompletionExists, HypothesisUnsatisfied):
            raise
        except Exception as e:
            self.logger.error(f"Error classifying case: {str(e)}")
            raise

    def build_completion(self, t, lam, target, variant=None):
        try:
            lam = RationalComplex.coerce(lam)
            variant = resolve_variant(target.kind, variant)
            if variant is VariantFlag.UFDS:
                raise VariantError("the u.f.d.s. variant is classify-only; no construction is available")
            if target.is_right:
                self._check_point(t, lam, target, variant, check_hypothesis=False)
                plan = self.build_completion(t.reversed_dual(), lam, target.mirrored,
                                             _MIRROR_VARIANT.get(variant, variant))
                return _dual_plan(plan, t, target)
            return self._build_left_or_fredholm(t, lam, target, variant)
        except (NoCompletionExists, HypothesisUnsatisfied, VariantError):
            raise
        except Exception as e:
            self.logger.error(f"Error building completion: {str(e)}")
            raise

    def _build_left_or_fredholm(self, t, lam, target, variant):
        kernels, slots = _describe_tuple(t, lam)
        datas = t.data_at(lam)
        try:
            case = self.classify_case(t, lam, target, variant)
        except HypothesisUnsatisfied as unsatisfied:
            return self._fallback(t, lam, target, variant, kernels, slots, unsatisfied)
        plan = assemble_plan(t, lam, case, _case_placements(case, t.n), kernels, slots)
        plan.case_alpha = _case_alpha(case, datas)
        invariants = predicted_invariants(t, plan, lam)
        if not target.achieved(invariants.alpha, invariants.beta, invariants.range_closed):
            self.logger.warning(f"Plan {case.text()} misses {target.value}: "
                                f"α={invariants.alpha}, β={invariants.beta}")
            plan.warnings = tuple(self.logger.drain())
        self.logger.info(f"Built {target.value} plan {case.text()} at {lam}")
        return plan

    def _fallback(self, t, lam, target, variant, kernels, slots, unsatisfied):
        case = self.classify_case(t, lam, target, variant, check_hypothesis=False)
        candidates = []
        for order, (placements, fallback) in enumerate([
            (_case_placements(case, t.n), 'case'),
            (_classical_placements(t.n), 'classical'),
        ]):
            tag = replace(case, fallback=fallback)
            plan = assemble_plan(t, lam, tag, placements, kernels, slots)
            invariants = predicted_invariants(t, plan, lam)
            if target.achieved(invariants.alpha, invariants.beta, invariants.range_closed):
                candidates.append(((invariants.alpha, invariants.beta, order), plan))
        if not candidates:
            raise unsatisfied
        _, plan = min(candidates, key=lambda item: item[0])
        self.logger.warning(f"{variant.value} hypothesis fails at {lam}; emitted the "
                            f"{plan.case.fallback} plan for case {case.text()} without theorem coverage")
        plan.warnings = tuple(self.logger.drain())
        return plan


_default_builder = None


def _builder():
    global _default_builder
    if _default_builder is None:
        _default_builder = CompletionBuilder('WARNING')
    return _default_builder


def classify_case(t, lam, target, variant=None, check_hypothesis=True):
    return _builder().classify_case(t, lam, target, variant, check_hypothesis)


def build_completion(t, lam, target, variant=None):
    return _builder().build_completion(t, lam, target, variant)
