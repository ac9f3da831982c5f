"""Independent checks of completion plans.

The symbolic layer evaluates kernel generators and slot functionals against
the model rows, then recomputes nullity and deficiency of the completed
matrix from actual coefficient pairings rather than from the plan's block
list. Finite sections add an exact lower bound on the nullity: a null
vector of a column section that keeps every non-zero row is a kernel vector
of the operator itself.
"""
from dataclasses import dataclass, field
import logging

from opMatrix.counts import ExtendedCount, INF
from opMatrix.errors import VerificationFailed, TruncationError
from opMatrix.linalg import exact_rank, nullspace
from opMatrix.utils.math import RationalComplex, C_ZERO, C_ONE

from .completion import predicted_invariants, position_horizon
from .logger import get_logger

SECTION_SIZES = (8, 16, 32)
TAIL_POSITIONS = 4
CHECK_DEPTH = 16


def _residual_row(model, lam, vector, horizon):
    """First row i < horizon where (model - λ) vector is non-zero, else None."""
    if model.dim.is_finite:
        horizon = min(horizon, model.dim.value)
    for i in range(horizon):
        value = C_ZERO - lam * vector.coeff(i)
        for j, entry in model.row(i):
            value = value + entry * vector.coeff(j)
        if value:
            return i
    return None


def _head_count(description, horizon):
    count = description.count
    return horizon if count.is_infinite else min(count.value, horizon)


def _positions_below(kernel, count, cols):
    """Assigned generator positions whose pivot falls inside the first ``cols`` columns."""
    limit = kernel.finite_count + 8 * cols
    if count.is_finite:
        limit = min(limit, count.value)
    for p in range(limit):
        pivot = kernel.pivot(p)
        if pivot < cols:
            yield p, pivot


def _block_columns(model, lam, plan, j, cols):
    """Sparse columns keyed by (block row, local row): D_j - λ and the J blocks above it."""
    columns = []
    kernel = plan.kernels[j - 1]
    by_pivot = {}
    for block in plan.j_blocks():
        if block.col != j:
            continue
        for p, pivot in _positions_below(kernel, block.count, cols):
            by_pivot.setdefault(pivot, []).append((block.row, plan.slots[block.row - 1].slot(p)))
    for c in range(cols):
        entries = {(j, i): v for i, v in model.column(c)}
        entries[(j, c)] = entries.get((j, c), C_ZERO) - lam
        for row, w in by_pivot.get(c, []):
            entries[(row, w)] = entries.get((row, w), C_ZERO) + C_ONE
        columns.append({key: v for key, v in entries.items() if v})
    return columns


def _section(t, plan, lam, N):
    cols = [model.dim.value if model.dim.is_finite else N for model in t.models]
    columns = []
    for j, model in enumerate(t.models, start=1):
        columns.extend(_block_columns(model, lam, plan, j, cols[j - 1]))
    rows = [0] * t.n
    for column in columns:
        for (i, w) in column:
            rows[i - 1] = max(rows[i - 1], w + 1)
    rows = [max(r, c) for r, c in zip(rows, cols)]
    offsets = [sum(rows[:k]) for k in range(t.n)]
    return rows, cols, offsets, columns


def assemble_block_truncation(t, plan, lam, N):
    """Dense section of T_n^d(A) - λ with N columns per infinite block.

    Each block row keeps every row the kept columns reach, so the section is
    an exact restriction of the operator to the first columns of every block.
    """
    if N < 1:
        raise TruncationError(f"section size must be positive, got {N}")
    rows, cols, offsets, columns = _section(t, plan, RationalComplex.coerce(lam), N)
    height = sum(rows)
    matrix = [[C_ZERO] * len(columns) for _ in range(height)]
    for c, column in enumerate(columns):
        for (i, w), value in column.items():
            matrix[offsets[i - 1] + w][c] = value
    return matrix


@dataclass(frozen=True)
class SectionResult:
    size: int
    rows: int
    cols: int
    rank: int

    @property
    def nullity(self):
        return self.cols - self.rank

    def to_json(self):
        return {"N": self.size, "rows": self.rows, "cols": self.cols,
                "rank": self.rank, "nullity": self.nullity}


@dataclass
class VerificationReport:
    target: str
    alpha: ExtendedCount
    beta: ExtendedCount
    range_closed: bool
    predicted_alpha: ExtendedCount
    predicted_beta: ExtendedCount
    sections: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    def to_json(self):
        return {
            "target": self.target,
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "range_closed": self.range_closed,
            "predicted": {"alpha": self.predicted_alpha.to_json(), "beta": self.predicted_beta.to_json()},
            "sections": [section.to_json() for section in self.sections],
            "flags": list(self.flags),
        }


class PlanVerifier:
    def __init__(self, log_level='INFO', sizes=SECTION_SIZES):
        self.logger = get_logger(self.__class__.__name__, getattr(logging, log_level))
        self.sizes = tuple(sizes)

    def _check_descriptions(self, t, plan, horizon):
        lam = plan.lam
        for j, model in enumerate(t.models, start=1):
            for name, description, operator in (
                ('kernel generator', plan.kernels[j - 1], model),
                ('slot functional', plan.slots[j - 1].functionals, model.dual()),
            ):
                positions = _head_count(description, horizon)
                for p in range(positions):
                    vector = description.generator(p)
                    bad = _residual_row(operator, lam, vector, vector.head() + CHECK_DEPTH)
                    if bad is not None:
                        raise VerificationFailed(
                            f"{name} {p} of D_{j} is not annihilated at row {bad}", [(j, vector)])
                    for q in range(positions):
                        expected = C_ONE if p == q else C_ZERO
                        if vector.coeff(description.pivot(q)) != expected:
                            raise VerificationFailed(
                                f"{name} {p} of D_{j} is not biorthogonal to pivot {q}", [(j, vector)])

    def _pairing(self, plan, horizon):
        """Slot-by-generator pairing <φ_{i,q}, A_ij g_{j,p}> over the head positions."""
        gens = [(j, p) for j in range(1, plan.n + 1) for p in range(_head_count(plan.kernels[j - 1], horizon))]
        slots = [(i, q) for i in range(1, plan.n + 1) for q in range(_head_count(plan.slots[i - 1], horizon))]
        matrix = []
        for i, q in slots:
            functional = plan.slots[i - 1].functional(q)
            row = []
            for j, p in gens:
                generator = plan.kernels[j - 1].generator(p)
                block = plan.blocks.get((i, j))
                value = C_ZERO
                if block is not None:
                    assigned = _head_count(plan.kernels[j - 1], horizon)
                    if block.count.is_finite:
                        assigned = min(assigned, block.count.value)
                    for r in range(assigned):
                        weight = generator.coeff(plan.kernels[j - 1].pivot(r))
                        if weight:
                            value = value + weight * functional.coeff(plan.slots[i - 1].slot(r))
                row.append(value)
            matrix.append(row)
        return slots, gens, matrix

    def _symbolic(self, t, plan):
        start = position_horizon(plan)
        horizon = start + TAIL_POSITIONS
        self._check_descriptions(t, plan, horizon)
        slots, gens, matrix = self._pairing(plan, horizon)
        rank = exact_rank(matrix) if gens and slots else 0
        closed = all(model.data_at(plan.lam).range_closed for model in t.models)

        last = horizon - 1
        tail_gens = [k for k, (j, p) in enumerate(gens) if p == last]
        tail_slots = [k for k, (i, q) in enumerate(slots) if q == last]
        tail = [[matrix[r][c] for c in tail_gens] for r in tail_slots]
        tail_rank = exact_rank(tail) if tail_gens and tail_slots else 0

        alpha = INF if len(tail_gens) > tail_rank else ExtendedCount(len(gens) - rank)
        beta = INF if (len(tail_slots) > tail_rank or not closed) else ExtendedCount(len(slots) - rank)
        return alpha, beta, closed, (slots, gens, matrix)

    def _kernel_witness(self, plan, gens, matrix):
        basis = nullspace(matrix, len(gens)) if matrix else nullspace([], len(gens))
        if not basis:
            return None
        _, coefficients = basis[0]
        witness = {}
        for (j, p), c in zip(gens, coefficients):
            if c:
                vector = plan.kernels[j - 1].generator(p).scale(c)
                witness[j] = witness[j] + vector if j in witness else vector
        return sorted(witness.items())

    def verify_plan(self, t, plan):
        try:
            target = plan.case.target
            predicted = predicted_invariants(t, plan, plan.lam)
            alpha, beta, closed, (slots, gens, matrix) = self._symbolic(t, plan)
            if (alpha, beta) != (predicted.alpha, predicted.beta):
                raise VerificationFailed(
                    f"symbolic (α, β) = ({alpha}, {beta}) disagrees with predicted "
                    f"({predicted.alpha}, {predicted.beta})",
                    self._kernel_witness(plan, gens, matrix))
            if plan.case_alpha is not None and alpha != plan.case_alpha:
                raise VerificationFailed(
                    f"symbolic α={alpha} disagrees with the case formula α={plan.case_alpha}",
                    self._kernel_witness(plan, gens, matrix))
            if not target.achieved(alpha, beta, closed):
                witness = self._kernel_witness(plan, gens, matrix)
                if not witness:
                    witness = [(i, plan.slots[i - 1].functional(q)) for i, q in slots][:4]
                raise VerificationFailed(
                    f"plan {plan.case.text()} misses {target.value}: α={alpha}, β={beta}, closed={closed}",
                    witness)

            report = VerificationReport(target.value, alpha, beta, closed, predicted.alpha, predicted.beta)
            previous = None
            for N in self.sizes:
                section = assemble_block_truncation(t, plan, plan.lam, N)
                result = SectionResult(N, len(section), len(section[0]) if section else 0, exact_rank(section))
                report.sections.append(result)
                if alpha.is_finite and result.nullity > alpha.value:
                    basis = nullspace(section)
                    raise VerificationFailed(
                        f"section N={N} has nullity {result.nullity} above the symbolic α={alpha}",
                        [basis[0][1]] if basis else None)
                if previous is not None and result.nullity < previous.nullity:
                    report.flags.append(f"section nullity drops from {previous.nullity} to {result.nullity} at N={N}")
                if alpha.is_finite and result.nullity < alpha.value and N == self.sizes[-1]:
                    report.flags.append(
                        f"section N={N} sees nullity {result.nullity} of α={alpha}; "
                        "the remaining kernel vectors are not finitely supported")
                previous = result
            for flag in report.flags:
                self.logger.warning(flag)
            self.logger.drain()
            self.logger.info(f"Verified {plan.case.text()} at {plan.lam}: α={alpha}, β={beta}")
            return report
        except VerificationFailed as e:
            self.logger.error(f"Verification failed: {str(e)}")
            raise
        except Exception as e:
            self.logger.error(f"Error verifying plan: {str(e)}")
            raise


def verify_plan(t, plan, sizes=SECTION_SIZES):
    return PlanVerifier('WARNING', sizes).verify_plan(t, plan)
