import argparse
import json
import logging
import os
import sys

import yaml

from opMatrix.errors import ConfigError, EngineError
from opMatrix.models import fredholm_profile
from opMatrix.regions import describe
from opMatrix.spectra import SpectrumKind, spectrum
from perturbation.completion import CompletionBuilder, Target, predicted_invariants
from perturbation.engine import PerturbationEngine, THEOREM_KINDS, Reading
from perturbation.job import JobConfig
from perturbation.logger import get_logger
from perturbation.verification import PlanVerifier
from visualizer import RegionPlotter

EXIT_CONFIG, EXIT_ENGINE, EXIT_IO = 2, 3, 4


def load_config(config_file):
    with open(config_file, 'r') as file:
        return yaml.safe_load(file) or {}


def _region_json(region):
    return {"describe": describe(region), "region": region.to_json()}


def _kinds(config):
    if config.kind == 'all':
        return list(THEOREM_KINDS)
    return [SpectrumKind.parse(config.kind)]


def _target(config):
    if config.target is not None:
        return Target.parse(config.target)
    return Target.for_kind(SpectrumKind.parse(config.kind))


class JobRunner:
    def __init__(self, config):
        self.config = config
        self.logger = get_logger(self.__class__.__name__, getattr(logging, config.log_level))
        self.engine = PerturbationEngine(config.log_level)
        self.builder = CompletionBuilder(config.log_level)
        self.verifier = PlanVerifier(config.log_level)

    def run(self):
        config = self.config
        self.logger.info(f"Running {config.command} on {config.models}")
        handler = getattr(self, '_' + config.command.replace('-', '_'))
        report = {"command": config.command}
        report.update(handler())
        return report

    def _spectrum(self):
        kinds = list(SpectrumKind) if self.config.kind == 'all' else [SpectrumKind.parse(self.config.kind)]
        return {"spectra": [
            {"model": model.expression(),
             "spectra": [dict(kind=kind.value, **_region_json(spectrum(model, kind))) for kind in kinds]}
            for model in self.config.model_list()
        ]}

    def _profile(self):
        models = []
        for model in self.config.model_list():
            parts = []
            for region, data in fredholm_profile(model).parts:
                parts.append(dict(data=data.to_json(), **_region_json(region)))
            models.append({
                "model": model.expression(),
                "parts": parts,
                "spectra": [dict(kind=kind.value, **_region_json(spectrum(model, kind))) for kind in SpectrumKind],
            })
        return {"models": models}

    def _intersect(self):
        t = self.config.tuple()
        reports = [self.engine.intersection_spectrum(t, kind, self.config.variant if len(_kinds(self.config)) == 1 else None,
                                                     Reading(self.config.reading))
                   for kind in _kinds(self.config)]
        return {"models": t.expression(), "reports": [report.to_json() for report in reports],
                "inclusions": self.engine.inclusion_bounds_check(t).to_json()}

    def _check_equality(self):
        t = self.config.tuple()
        checks = []
        for kind in _kinds(self.config):
            check = self.engine.union_equality_check(t, kind)
            checks.append(dict(kind=kind.value, **check.to_json()))
        return {"models": t.expression(), "checks": checks}

    def _hypothesis(self):
        t = self.config.tuple()
        regions = []
        for kind in _kinds(self.config):
            variant = self.config.variant if self.config.kind != 'all' else None
            region = self.engine.hypothesis_region(t, kind, variant, Reading(self.config.reading))
            regions.append(dict(kind=kind.value, **_region_json(region)))
        return {"models": t.expression(), "hypothesis": regions,
                "regular": _region_json(self.engine.regular_region(t))}

    def _plan(self):
        t = self.config.tuple()
        target = _target(self.config)
        plan = self.builder.build_completion(t, self.config.spectral_parameter(), target, self.config.variant)
        return t, plan

    def _complete(self):
        t, plan = self._plan()
        return {"plan": plan.to_json(), "predicted": predicted_invariants(t, plan).to_json()}

    def _verify(self):
        t, plan = self._plan()
        verification = self.verifier.verify_plan(t, plan)
        return {"plan": plan.to_json(), "verification": verification.to_json()}

    def _plot(self):
        t = self.config.tuple()
        kind = SpectrumKind.E if self.config.kind == 'all' else SpectrumKind.parse(self.config.kind)
        report = self.engine.intersection_spectrum(t, kind, self.config.variant, Reading(self.config.reading))
        plotter = RegionPlotter(window=list(self.config.window_bounds()), resolution=self.config.resolution)
        out = self.config.output_dir
        csv_path = plotter.save_csv(report.result, os.path.join(out, 'grid.csv'))
        svg_path = plotter.save_svg(report.result, os.path.join(out, 'plot.svg'))
        print(f"Grid saved to {csv_path}")
        print(f"Plot saved to {svg_path}")
        return {"models": t.expression(), "report": report.to_json(),
                "window": self.config.window, "resolution": self.config.resolution}


def save_report(report, output_dir):
    path = os.path.join(output_dir, 'report.json')
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(report, f, indent=2, ensure_ascii=False)
        f.write('\n')
    print(f"Report saved to {path}")
    return path


def build_config(args):
    values = load_config(args.config) if args.config else {}
    overrides = {
        'command': args.command, 'kind': args.kind, 'variant': args.variant, 'target': args.target,
        'lambda': args.lam, 'resolution': args.resolution, 'output_dir': args.out,
        'log_level': args.log_level, 'reading': args.reading,
    }
    if args.window:
        overrides['window'] = args.window.split(',')
    if args.models:
        overrides['models'] = args.models
    values.update({key: value for key, value in overrides.items() if value is not None})
    if 'lambda' in values and 'lam' in values:
        values.pop('lam')
    return JobConfig.from_dict(values)


def run_job(config):
    os.makedirs(config.output_dir, exist_ok=True)
    report = JobRunner(config).run()
    save_report(report, config.output_dir)
    return report


def parse_args(argv=None):
    parser = argparse.ArgumentParser(description="Intersection spectra of upper triangular operator matrices")
    parser.add_argument('--config', help="Path to YAML job file")
    parser.add_argument('--command', choices=JobConfig.param.command.objects)
    parser.add_argument('--kind')
    parser.add_argument('--variant')
    parser.add_argument('--target')
    parser.add_argument('--lambda', dest='lam', help="Spectral parameter, e.g. 0 or 1/2-i")
    parser.add_argument('--window', help="xmin,xmax,ymin,ymax as rationals")
    parser.add_argument('--resolution', type=int)
    parser.add_argument('--reading', choices=['pointwise', 'fixed'])
    parser.add_argument('--out', help="Output directory")
    parser.add_argument('--log-level', dest='log_level')
    parser.add_argument('--models', nargs='+', help="Model expressions D1 ... Dn")
    return parser.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    try:
        config = build_config(args)
        run_job(config)
    except (ConfigError, yaml.YAMLError) as e:
        print(f"config error: {str(e).splitlines()[0]}", file=sys.stderr)
        return EXIT_CONFIG
    except EngineError as e:
        print(f"engine error: {type(e).__name__}: {str(e).splitlines()[0]}", file=sys.stderr)
        return EXIT_ENGINE
    except OSError as e:
        print(f"io error: {e}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
