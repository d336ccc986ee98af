"""Pipeline orchestration: configuration, task execution and JSON reports.

A run validates the weights, executes the requested tasks in dependency
order, then repeats the decisive computations at truncation ``D + 2``.  A
task only passes when its decisive values agree between the two runs.
"""
from __future__ import annotations

import configparser
import json
import random
import shlex
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import __version__
from .errors import InconsistencyError, NCCRError, TruncationInstabilityError, ValidationError
from .homological import resolution_report, resolve_tops
from .monomials import gorenstein_symmetry_check, hilbert_series, invariant_hilbert_basis
from .nccr import build_nccr, evaluate_path_combination, extract_presentation, quotient_dims_by_idempotent
from .tilting import build_tilting_object, endomorphism_algebra, verify_ext_vanishing
from .weights import check_effectiveness, compute_L, is_generic, is_quasi_symmetric, is_unimodular, parse_weights

__all__ = [
    "TASKS",
    "PipelineConfig",
    "run_pipeline",
    "run_batch",
    "parse_config_file",
    "parse_batch_file",
    "random_effective_weights",
    "dumps",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = "1.0"
TASKS = ("checks", "nccr", "presentation", "resolution", "tilting", "end")
_REQUIRES = {
    "checks": (),
    "nccr": (),
    "presentation": ("nccr",),
    "resolution": ("nccr",),
    "tilting": ("resolution",),
    "end": ("tilting",),
}


@dataclass
class PipelineConfig:
    weights: str
    finite: str = None
    truncation: int = None
    epsilon: str = "left-open"
    tasks: tuple = TASKS
    presentation_degree: int = None
    output: str = None
    timing: bool = True

    def resolved_tasks(self):
        """Requested tasks closed under prerequisites, in canonical order."""
        want = set()
        stack = list(self.tasks)
        while stack:
            t = stack.pop()
            if t not in _REQUIRES:
                raise ValidationError(f"unknown task {t!r}", condition="tasks")
            if t not in want:
                want.add(t)
                stack.extend(_REQUIRES[t])
        return [t for t in TASKS if t in want]

    def to_dict(self):
        return {
            "weights": self.weights,
            "finite": self.finite,
            "truncation": self.truncation,
            "epsilon": self.epsilon,
            "tasks": list(self.tasks),
            "presentation_degree": self.presentation_degree,
        }


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def dumps(report):
    return json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n"


# --- validation -----------------------------------------------------------


def validate(w):
    """Reject inputs outside the construction, naming the failed condition."""
    eff = check_effectiveness(w.torus_only())
    if not eff.effective:
        raise ValidationError("weights are not effective: " + "; ".join(eff.failed_conditions()),
                              condition=eff.failed_conditions()[0].split()[0])
    if not is_unimodular(w):
        raise ValidationError("action is not unimodular", condition="unimodular")


# --- tasks ----------------------------------------------------------------


def _checks(w, D):
    eff = check_effectiveness(w)
    hb = invariant_hilbert_basis(w)
    degs = [m.degree for m in hb]
    window = max(D, sum(degs) + w.n)
    gor = gorenstein_symmetry_check(hilbert_series(w, window), degs, w.n)
    out = {
        "effectiveness": eff.to_dict(),
        "torus_effectiveness": check_effectiveness(w.torus_only()).to_dict(),
        "quasi_symmetric": is_quasi_symmetric(w),
        "unimodular": is_unimodular(w),
        "generic_criterion": is_generic(w),
        "generic_basis": "criterion-based",
        "L": compute_L(w),
        "hilbert_basis": [str(m) for m in hb],
        "hilbert_basis_degrees": degs,
        "gorenstein": dict(gor.to_dict(), window=window, parameter_is_n=gor.status == "confirmed" and gor.a == w.n),
    }
    passed = out["quasi_symmetric"] and out["unimodular"] and out["gorenstein"]["parameter_is_n"]
    return out, passed


def _quotient(lam, D):
    """Finiteness of ``Lambda / Lambda e Lambda`` against its predicted value.

    Finiteness is predicted when the whole action passes the genericity
    criterion (for a pure torus: effectiveness).  Otherwise no prediction
    is made and the observation is only recorded.
    """
    dims = quotient_dims_by_idempotent(lam, D)
    last = max((d for d, v in enumerate(dims) if v), default=-1)
    finite = last < len(dims) - 2
    predicted = lam.hypotheses.generic_criterion
    return {
        "dims": dims,
        "window": [0, D - 2],
        "last_nonzero_degree": last,
        "finite_at_truncation": finite,
        "predicted_finite": predicted,
        "agrees_with_prediction": finite or not predicted,
        "status": "certified-at-truncation",
    }


def _presentation(lam, bound):
    pres = extract_presentation(lam, bound)
    ok = True
    for rels in pres.relations.values():
        for rel in rels:
            if not evaluate_path_combination(lam, pres, rel).is_zero():
                ok = False
    out = pres.to_dict()
    out["relations_evaluate_to_zero"] = ok
    return out, ok


def _run_once(config: PipelineConfig, w, D, tasks):
    """One pass at truncation ``D``: ``(results, decisive values, pass flags)``."""
    res, key, ok = {}, {}, {}
    n = w.n
    lam = P = E = None
    if "checks" in tasks:
        res["checks"], ok["checks"] = _checks(w, D)
        key["checks"] = res["checks"]["gorenstein"]["a"]
    if "nccr" in tasks:
        lam = build_nccr(w, D, config.epsilon)
        q = _quotient(lam, D)
        res["nccr"] = dict(lam.to_dict(), quotient_by_idempotent=q)
        ok["nccr"] = q["agrees_with_prediction"]
        key["nccr"] = (q["finite_at_truncation"], q["dims"][: q["last_nonzero_degree"] + 1] if q["finite_at_truncation"] else None)
    if "presentation" in tasks:
        bound = config.presentation_degree or min(n, D - 1)
        res["presentation"], ok["presentation"] = _presentation(lam, bound)
        key["presentation"] = res["presentation"]["relation_dims"]
    if "resolution" in tasks:
        P = resolve_tops(lam, D)
        rep = resolution_report(P, D)
        full = resolve_tops(lam, D, include_e=True)
        res["resolution"] = {
            "report": rep.to_dict(),
            "complex": P.to_dict(),
            "lambda0_betti": full.betti_table(),
        }
        ok["resolution"] = (
            rep.as_regular_shape and rep.final_is_one_minus_e and rep.exact_in_window and rep.minimal and rep.d_squared_zero
        )
        key["resolution"] = (rep.betti, full.betti_table())
    if "tilting" in tasks:
        E = build_tilting_object(lam, D, P)
        ext = verify_ext_vanishing(E)
        res["tilting"] = dict(E.to_dict(), ext=ext.to_dict())
        for c in E.components:
            if not c.raw.check_d_squared():
                raise InconsistencyError(f"d^2 != 0 in component {c.label}")
        ok["tilting"] = ext.vanishes_off_zero and all(c.conditions_hold for c in E.components) and E.tail_check["ok"]
        key["tilting"] = (ext.to_dict()["pairs"], [c.m for c in E.components], [c.normalized.betti_table() for c in E.components])
    if "end" in tasks:
        rep = endomorphism_algebra(E)
        res["end"] = rep.to_dict()
        if not rep.associative or not rep.unital:
            raise InconsistencyError("endomorphism algebra is not associative and unital")
        ok["end"] = rep.dimension >= n
        key["end"] = (rep.block_dims, rep.split.to_dict())
    return res, key, ok


def run_pipeline(config: PipelineConfig):
    """Execute a configuration.  Returns ``(report dict, exit status)``."""
    t0 = time.perf_counter()
    report = {
        "schema_version": SCHEMA_VERSION,
        "package_version": __version__,
        "canonical_order": "graded lexicographic, x1 > ... > xn",
        "config": config.to_dict(),
    }
    try:
        w = parse_weights(config.weights, config.finite)
        n = w.n
        D = config.truncation if config.truncation is not None else 3 * n
        if D < n + 2:
            raise ValidationError(f"truncation {D} below n + 2 = {n + 2}", condition="truncation")
        report["config"]["truncation"] = D
        report["weights"] = w.to_dict()
        tasks = config.resolved_tasks()
        report["tasks_run"] = tasks
        validate(w)
        res, key, ok = _run_once(config, w, D, tasks)
        res2, key2, ok2 = _run_once(config, w, D + 2, tasks)
        unstable = sorted(t for t in key if _jsonable(key[t]) != _jsonable(key2[t]))
        report["results"] = res
        report["stability"] = {"truncations": [D, D + 2], "stable": not unstable, "unstable_tasks": unstable}
        report["status"] = {t: ("pass" if ok[t] and ok2[t] and t not in unstable else "fail") for t in tasks}
        if unstable:
            raise TruncationInstabilityError("results differ under D -> D + 2: " + ", ".join(unstable))
        failed = [t for t in tasks if report["status"][t] != "pass"]
        if failed:
            # a verification failing on admissible input contradicts the theory
            report["error"] = {"code": "verification-failed", "tasks": failed}
            code = 4
        else:
            code = 0
    except NCCRError as exc:
        report["error"] = {"code": exc.code, "message": str(exc), "condition": getattr(exc, "condition", None)}
        code = exc.exit_status
    except Exception as exc:  # defensive: any other failure is a bug
        report["error"] = {"code": "internal-inconsistency", "message": f"{type(exc).__name__}: {exc}"}
        code = 4
    report["exit_status"] = code
    if config.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
    return report, code


# --- configuration files ---------------------------------------------------


def _config_from_mapping(m, defaults=None):
    d = dict(defaults or {})
    d.update({k.strip().lower().replace("-", "_"): v.strip() for k, v in m.items()})
    if "weights" not in d:
        raise ValidationError("configuration needs weights", condition="config")
    tasks = d.get("tasks")
    return PipelineConfig(
        weights=d["weights"],
        finite=d.get("finite") or None,
        truncation=int(d["truncation"]) if d.get("truncation") else None,
        epsilon=d.get("epsilon", "left-open"),
        tasks=tuple(t.strip() for t in tasks.split(",") if t.strip()) if tasks else TASKS,
        presentation_degree=int(d["presentation_degree"]) if d.get("presentation_degree") else None,
    )


def parse_config_file(path):
    """INI file with a ``[pipeline]`` section (keys as in ``PipelineConfig``)."""
    cp = configparser.ConfigParser()
    with open(path) as fh:
        cp.read_file(fh)
    if "pipeline" not in cp:
        raise ValidationError(f"{path}: missing [pipeline] section", condition="config")
    return _config_from_mapping(cp["pipeline"])


def parse_batch_file(path, defaults=None):
    """One item per line: ``<weights> [key=value ...]``; ``#`` starts a comment."""
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = shlex.split(line)
            m = {"weights": parts[0]}
            for p in parts[1:]:
                if "=" not in p:
                    raise ValidationError(f"bad batch entry {p!r}", condition="config")
                k, v = p.split("=", 1)
                m[k] = v
            out.append(_config_from_mapping(m, defaults))
    return out


def random_effective_weights(count, n_range=(4, 6), max_abs=3, seed=0):
    """Deterministic sample of effective weight vectors (as strings)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(*n_range)
        p = rng.randint(2, n - 2)
        pos = [rng.randint(1, max_abs) for _ in range(p)]
        neg = [-rng.randint(1, max_abs) for _ in range(n - p)]
        diff = sum(pos) + sum(neg)
        # rebalance the last entry of the heavier side
        if diff > 0:
            neg[-1] -= diff
        elif diff < 0:
            pos[-1] -= diff
        chi = pos + neg
        if max(abs(c) for c in chi) > 2 * max_abs:
            continue
        if all(gcd(a, b) == 1 for a in pos for b in neg):
            out.append(",".join(str(c) for c in chi))
    return out


def _summary_row(config, report, code):
    res = report.get("results", {})
    row = {"weights": config.weights, "finite": config.finite, "exit_status": code}
    if "resolution" in res:
        r = res["resolution"]["report"]
        row["resolution_length"] = r["length"]
        row["as_regular_shape"] = r["as_regular_shape"]
    if "tilting" in res:
        row["ext_totals"] = res["tilting"]["ext"]["totals"]
        row["ext_vanishes_off_zero"] = res["tilting"]["ext"]["vanishes_off_zero"]
        row["m"] = res["tilting"]["m"]
    if "end" in res:
        row["end_dimension"] = res["end"]["dimension"]
    if "error" in report:
        row["error"] = report["error"]
    row["status"] = report.get("status", {})
    return row


def _batch_item(config):
    config.timing = False
    report, code = run_pipeline(config)
    return _summary_row(config, report, code)


def run_batch(configs, workers=1):
    """Independent pipelines; one summary row per item in input order."""
    configs = list(configs)
    if not configs:
        return []
    if workers <= 1:
        return [_batch_item(c) for c in configs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_batch_item, configs))
