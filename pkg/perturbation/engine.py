"""Intersection spectra of upper triangular operator matrices.

For a diagonal tuple (D_1, ..., D_n) the engine evaluates, part by part on
the common refinement of the Fredholm profiles, the formulas describing the
intersection over all completions of the left/right essential and left/right
Weyl spectra and of the essential spectrum, the embedding hypotheses under
which those formulas are exact, and the conditions under which the
intersection collapses to the union of the diagonal spectra.
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
import logging

from opMatrix.counts import total
from opMatrix.embedding import RelationMode, space_relation
from opMatrix.errors import VariantError
from opMatrix.regions import FULL, EMPTY, Empty, union_of, common_refinement, describe
from opMatrix.spectra import SpectrumKind, selects

from .logger import get_logger

THEOREM_KINDS = (SpectrumKind.LE, SpectrumKind.RE, SpectrumKind.E, SpectrumKind.LW, SpectrumKind.RW)


class VariantFlag(Enum):
    PLAIN_EMBEDDING = 'PlainEmbedding'
    STRICT_EMBEDDING = 'StrictEmbedding'
    BETA_N_INFINITE = 'BetaNInfinite'
    ALPHA_ONE_INFINITE = 'AlphaOneInfinite'
    STRONG_EMBEDDING = 'StrongEmbedding'
    UFDS = 'Ufds'

    @classmethod
    def parse(cls, text):
        for flag in cls:
            if flag.value.lower() == text.lower():
                return flag
        raise VariantError(f"unknown variant {text!r}")


class Reading(Enum):
    POINTWISE = 'pointwise'
    FIXED = 'fixed'


DEFAULT_VARIANT = {
    SpectrumKind.LE: VariantFlag.PLAIN_EMBEDDING,
    SpectrumKind.RE: VariantFlag.PLAIN_EMBEDDING,
    SpectrumKind.E: VariantFlag.STRONG_EMBEDDING,
    SpectrumKind.LW: VariantFlag.STRICT_EMBEDDING,
    SpectrumKind.RW: VariantFlag.STRICT_EMBEDDING,
}

ALLOWED_VARIANTS = {
    SpectrumKind.LE: {VariantFlag.PLAIN_EMBEDDING},
    SpectrumKind.RE: {VariantFlag.PLAIN_EMBEDDING},
    SpectrumKind.E: {VariantFlag.STRONG_EMBEDDING, VariantFlag.UFDS},
    SpectrumKind.LW: {VariantFlag.STRICT_EMBEDDING, VariantFlag.BETA_N_INFINITE},
    SpectrumKind.RW: {VariantFlag.STRICT_EMBEDDING, VariantFlag.ALPHA_ONE_INFINITE},
}


def resolve_variant(kind, variant=None):
    if kind not in ALLOWED_VARIANTS:
        raise VariantError(f"no intersection formula for kind {kind.value}")
    if variant is None:
        return DEFAULT_VARIANT[kind]
    if isinstance(variant, str):
        variant = VariantFlag.parse(variant)
    if variant not in ALLOWED_VARIANTS[kind]:
        raise VariantError(f"variant {variant.value} does not apply to kind {kind.value}")
    return variant


@dataclass(frozen=True)
class DiagonalTuple:
    """The fixed diagonal (D_1, ..., D_n), n >= 2."""
    models: tuple

    def __post_init__(self):
        models = tuple(self.models)
        if len(models) < 2:
            raise VariantError(f"a diagonal tuple needs at least two entries, got {len(models)}")
        object.__setattr__(self, 'models', models)

    @property
    def n(self):
        return len(self.models)

    def data_at(self, lam):
        return tuple(model.data_at(lam) for model in self.models)

    def reversed_dual(self):
        """(D_n', ..., D_1'), the diagonal of the adjoint matrix."""
        return DiagonalTuple(tuple(model.dual() for model in reversed(self.models)))

    def expression(self):
        return [model.expression() for model in self.models]


@dataclass(frozen=True)
class TuplePartition:
    """Parts of the plane on which every diagonal entry has constant Fredholm data."""
    parts: tuple

    def collect(self, predicate):
        return union_of(region for region, datas in self.parts if predicate(datas))

    def __len__(self):
        return len(self.parts)


@lru_cache(maxsize=128)
def _refine(t):
    profiles = [model.profile().parts for model in t.models]
    refined = common_refinement([[region for region, _ in parts] for parts in profiles])
    return TuplePartition(tuple(
        (region, tuple(parts[k][1] for parts, k in zip(profiles, indices)))
        for indices, region in refined
    ))


def _alphas(datas):
    return [d.alpha for d in datas]


def _betas(datas):
    return [d.beta for d in datas]


def theorem_terms(kind, datas):
    """Labelled terms of the intersection formula, each evaluated at data constant on a part.

    Leading terms are labelled by the diagonal spectrum they copy, the rest Δ_k.
    """
    n = len(datas)
    alpha, beta = _alphas(datas), _betas(datas)
    le = [selects(SpectrumKind.LE, d) for d in datas]
    re = [selects(SpectrumKind.RE, d) for d in datas]
    terms = []
    if kind in (SpectrumKind.LE, SpectrumKind.LW):
        terms.append(('σ_le(D_1)', le[0]))
        for k in range(2, n + 1):
            terms.append((f'Δ_{k}', le[k - 1] and total(beta[:k - 1]).is_finite))
        if kind is SpectrumKind.LW:
            terms.append((f'Δ_{n + 1}', total(beta) < total(alpha)))
    elif kind in (SpectrumKind.RE, SpectrumKind.RW):
        terms.append((f'σ_re(D_{n})', re[n - 1]))
        for k in range(1, n):
            terms.append((f'Δ_{k}', re[k - 1] and total(alpha[k:]).is_finite))
        if kind is SpectrumKind.RW:
            terms.append((f'Δ_{n + 1}', total(alpha) < total(beta)))
    elif kind is SpectrumKind.E:
        terms.append(('σ_le(D_1)', le[0]))
        terms.append((f'σ_re(D_{n})', re[n - 1]))
        for k in range(2, n):
            terms.append((f'Δ_{k}^le', le[k - 1] and total(beta[:k - 1]).is_finite))
            terms.append((f'Δ_{k}^re', re[k - 1] and total(alpha[k:]).is_finite))
        terms.append(('β(D_1)=∞', beta[0].is_infinite and total(alpha[1:]).is_finite))
        terms.append((f'α(D_{n})=∞', alpha[n - 1].is_infinite and total(beta[:n - 1]).is_finite))
    else:
        raise VariantError(f"no intersection formula for kind {kind.value}")
    return terms


def in_intersection(kind, datas):
    """Pointwise membership in the intersection spectrum of the given kind."""
    return any(flag for _, flag in theorem_terms(kind, datas))


def _is_leading(label):
    return label.startswith('σ_')


def hypothesis_holds(kind, variant, datas):
    """Embedding and complements conditions for the shifted entries, read on one part."""
    if not all(d.range_closed for d in datas):
        return False
    n = len(datas)
    alpha, beta = _alphas(datas), _betas(datas)
    later = [(k, j) for k in range(n) for j in range(n) if k > j]
    earlier = [(k, j) for k in range(n) for j in range(n) if k < j]
    if kind is SpectrumKind.LE:
        return all(space_relation(RelationMode.EMBEDS, alpha[k], beta[j]) for k, j in later)
    if kind is SpectrumKind.RE:
        return all(space_relation(RelationMode.EMBEDS, beta[k], alpha[j]) for k, j in earlier)
    if kind is SpectrumKind.E:
        mode = RelationMode.UFDS if variant is VariantFlag.UFDS else RelationMode.STRONGLY_EMBEDS
        return all(space_relation(mode, alpha[k], beta[j]) for k, j in later)
    if kind is SpectrumKind.LW:
        if variant is VariantFlag.BETA_N_INFINITE:
            return (beta[n - 1].is_infinite
                    and all(space_relation(RelationMode.EMBEDS, alpha[k], beta[j]) for k, j in later))
        return all(space_relation(RelationMode.ESSENTIALLY_EMBEDS, alpha[k], beta[j]) for k, j in later)
    if kind is SpectrumKind.RW:
        if variant is VariantFlag.ALPHA_ONE_INFINITE:
            return (alpha[0].is_infinite
                    and all(space_relation(RelationMode.EMBEDS, beta[k], alpha[j]) for k, j in earlier))
        return all(space_relation(RelationMode.ESSENTIALLY_EMBEDS, beta[k], alpha[j]) for k, j in earlier)
    raise VariantError(f"no hypothesis for kind {kind.value}")


def _equality_failure(kind, datas):
    """True where the collapse-to-union condition of the given kind fails."""
    n = len(datas)
    alpha, beta = _alphas(datas), _betas(datas)
    le = [selects(SpectrumKind.LE, d) for d in datas]
    re = [selects(SpectrumKind.RE, d) for d in datas]
    if kind is SpectrumKind.LE:
        bad = any(le[k - 1] and total(beta[:k - 1]).is_infinite for k in range(2, n + 1))
        covered = le[0] or any(le[k - 1] and total(beta[:k - 1]).is_finite for k in range(2, n))
        return bad and not covered
    if kind is SpectrumKind.RE:
        bad = any(re[k - 1] and total(alpha[k:]).is_infinite for k in range(1, n))
        covered = re[n - 1] or any(re[k - 1] and total(alpha[k:]).is_finite for k in range(2, n))
        return bad and not covered
    if kind is SpectrumKind.E:
        bad = any(beta[k - 1].is_infinite and total(alpha[k:]).is_infinite for k in range(1, n))
        covered = le[0] or re[n - 1] or any(
            (le[k - 1] and total(beta[:k - 1]).is_finite) or (re[k - 1] and total(alpha[k:]).is_finite)
            for k in range(2, n))
        return bad and not covered
    if kind is SpectrumKind.LW:
        lw = [selects(SpectrumKind.LW, d) for d in datas]
        delta_one = any(
            not any(le[:k - 1]) and any(lw[s] for s in range(n) if s != k - 2) and beta[k - 2].is_infinite
            for k in range(2, n + 1))
        delta_two = (not any(le) and total(alpha) <= total(beta)
                     and any(alpha[k] > beta[k] for k in range(n)))
        return delta_one or delta_two
    if kind is SpectrumKind.RW:
        rw = [selects(SpectrumKind.RW, d) for d in datas]
        delta_one = any(
            not any(re[k:]) and any(rw[s] for s in range(n) if s != k) and alpha[k].is_infinite
            for k in range(1, n))
        delta_two = (not any(re) and total(beta) <= total(alpha)
                     and any(beta[k] > alpha[k] for k in range(n)))
        return delta_one or delta_two
    raise VariantError(f"no equality condition for kind {kind.value}")


@dataclass
class ReportWarning:
    """A warning about a region; the region is rendered when the report is serialised."""
    message: str
    region: object = None

    def text(self):
        if self.region is None:
            return self.message
        return f"{self.message} {describe(self.region)}"


@dataclass
class TheoremReport:
    kind: SpectrumKind
    variant: VariantFlag
    reading: Reading
    result: object
    leading_terms: list
    delta_sets: list
    hypothesis_region: object
    regular_everywhere: bool
    warnings: list = field(default_factory=list)

    def terms(self):
        return self.leading_terms + self.delta_sets

    def to_json(self):
        return {
            "kind": self.kind.value,
            "variant": self.variant.value,
            "reading": self.reading.value,
            "result": {"describe": describe(self.result), "region": self.result.to_json()},
            "leading_terms": [_labelled_json(label, region) for label, region in self.leading_terms],
            "delta_sets": [_labelled_json(label, region) for label, region in self.delta_sets],
            "hypothesis_region": {"describe": describe(self.hypothesis_region),
                                  "region": self.hypothesis_region.to_json()},
            "regular_everywhere": self.regular_everywhere,
            "warnings": [warning.text() for warning in self.warnings],
        }


def _labelled_json(label, region):
    return {"label": label, "describe": describe(region), "region": region.to_json()}


@dataclass
class EqualityCheck:
    holds: bool
    witness: object

    def to_json(self):
        return {"holds": self.holds, "witness": {"describe": describe(self.witness),
                                                  "region": self.witness.to_json()}}


@dataclass
class InclusionReport:
    """Outcome of each sandwich inclusion; ``checks`` holds (name, passed, offending region)."""
    checks: list

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)

    def to_json(self):
        return {
            "passed": self.passed,
            "checks": [{"name": name, "passed": ok, "offending": describe(region)}
                       for name, ok, region in self.checks],
        }


class PerturbationEngine:
    def __init__(self, log_level='INFO'):
        self.log_level = log_level
        self.logger = get_logger(self.__class__.__name__, getattr(logging, log_level))

    def refine_tuple(self, t):
        try:
            partition = _refine(t)
            self.logger.debug(f"Refined {t.expression()} into {len(partition)} parts")
            return partition
        except Exception as e:
            self.logger.error(f"Error refining tuple: {str(e)}")
            raise

    def intersection_spectrum(self, t, kind, variant=None, reading=Reading.POINTWISE):
        try:
            variant = resolve_variant(kind, variant)
            reading = Reading(reading) if isinstance(reading, str) else reading
            partition = self.refine_tuple(t)

            labels = [label for label, _ in theorem_terms(kind, partition.parts[0][1])]
            regions = {label: [] for label in labels}
            for region, datas in partition.parts:
                for label, flag in theorem_terms(kind, datas):
                    if flag:
                        regions[label].append(region)
            leading = [(label, union_of(regions[label])) for label in labels if _is_leading(label)]
            deltas = [(label, union_of(regions[label])) for label in labels if not _is_leading(label)]
            result = partition.collect(lambda datas: in_intersection(kind, datas))

            holds = self._hypothesis_predicate(t, kind, variant, reading)
            hypothesis = partition.collect(holds)
            failing = partition.collect(lambda datas: not holds(datas))
            outside = partition.collect(lambda datas: in_intersection(kind, datas) and not holds(datas))
            warnings = []
            if not isinstance(failing, Empty):
                self.logger.warning(f"{variant.value} hypothesis fails for {kind.value} on part of the plane")
                warnings.append(ReportWarning(f"{variant.value} hypothesis fails on", failing))
            if not isinstance(outside, Empty):
                self.logger.warning(f"{kind.value} result reported outside the hypothesis region")
                warnings.append(ReportWarning("result reported outside the hypothesis region on", outside))

            regular = all(all(d.range_closed for d in datas) for _, datas in partition.parts)
            self.logger.info(f"{kind.value} intersection over {len(partition)} parts, {len(warnings)} warnings")
            return TheoremReport(kind, variant, reading, result, leading, deltas, hypothesis, regular, warnings)
        except Exception as e:
            self.logger.error(f"Error computing intersection spectrum: {str(e)}")
            raise

    def _hypothesis_predicate(self, t, kind, variant, reading):
        if reading is Reading.FIXED:
            fixed = hypothesis_holds(kind, variant, t.data_at(0))
            return lambda datas: fixed
        return lambda datas: hypothesis_holds(kind, variant, datas)

    def hypothesis_region(self, t, kind, variant=None, reading=Reading.POINTWISE):
        variant = resolve_variant(kind, variant)
        reading = Reading(reading) if isinstance(reading, str) else reading
        if reading is Reading.FIXED:
            return FULL if hypothesis_holds(kind, variant, t.data_at(0)) else EMPTY
        return self.refine_tuple(t).collect(self._hypothesis_predicate(t, kind, variant, reading))

    def union_equality_check(self, t, kind):
        try:
            witness = self.refine_tuple(t).collect(lambda datas: _equality_failure(kind, datas))
            return EqualityCheck(isinstance(witness, Empty), witness)
        except Exception as e:
            self.logger.error(f"Error checking union equality: {str(e)}")
            raise

    def inclusion_bounds_check(self, t):
        partition = self.refine_tuple(t)
        n = t.n

        def diagonal(kind, datas, index=None):
            if index is not None:
                return selects(kind, datas[index])
            return any(selects(kind, d) for d in datas)

        def inside(kind, datas):
            return in_intersection(kind, datas)

        checks = [
            ("σ_le(D_1) ⊆ LE", lambda ds: diagonal(SpectrumKind.LE, ds, 0) and not inside(SpectrumKind.LE, ds)),
            ("LE ⊆ ∪σ_le(D_k)", lambda ds: inside(SpectrumKind.LE, ds) and not diagonal(SpectrumKind.LE, ds)),
            (f"σ_re(D_{n}) ⊆ RE",
             lambda ds: diagonal(SpectrumKind.RE, ds, n - 1) and not inside(SpectrumKind.RE, ds)),
            ("RE ⊆ ∪σ_re(D_k)", lambda ds: inside(SpectrumKind.RE, ds) and not diagonal(SpectrumKind.RE, ds)),
            ("LW ⊆ ∪σ_lw(D_k)", lambda ds: inside(SpectrumKind.LW, ds) and not diagonal(SpectrumKind.LW, ds)),
            ("RW ⊆ ∪σ_rw(D_k)", lambda ds: inside(SpectrumKind.RW, ds) and not diagonal(SpectrumKind.RW, ds)),
            ("LE ⊆ LW", lambda ds: inside(SpectrumKind.LE, ds) and not inside(SpectrumKind.LW, ds)),
            ("RE ⊆ RW", lambda ds: inside(SpectrumKind.RE, ds) and not inside(SpectrumKind.RW, ds)),
        ]
        results = []
        for name, violated in checks:
            offending = partition.collect(violated)
            results.append((name, isinstance(offending, Empty), offending))
            if not isinstance(offending, Empty):
                self.logger.warning(f"Inclusion {name} fails")
        return InclusionReport(results)

    def dense_range_region(self, t):
        return self.refine_tuple(t).collect(lambda datas: all(d.range_dense for d in datas))

    def regular_region(self, t):
        return self.refine_tuple(t).collect(lambda datas: all(d.range_closed for d in datas))

    def all_reports(self, t, reading=Reading.POINTWISE):
        return {kind: self.intersection_spectrum(t, kind, None, reading) for kind in THEOREM_KINDS}


def diagonal_union(t, kind):
    """∪_k σ_kind(D_k) over the refined parts."""
    return _refine(t).collect(lambda datas: any(selects(kind, d) for d in datas))
