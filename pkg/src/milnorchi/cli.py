"""Batch front-end: run a JSON job file and write a JSON report.

Job keys: variables, task, polynomials (object name -> string, or a list),
weights, weighted_degree (plain or per polynomial name), target, delta_sign,
milnor_ab_asserted, milnor_chi, k_max, oracle.

Exit status: 0 success, 1 malformed input, 2 engine error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from fractions import Fraction
from importlib import resources

from . import __version__
from .degree import exact_signature, gram_form, local_algebra
from .errors import ConsistencyFail, EngineError, PolynomialParseError
from .links import (
    link_chi,
    link_euler,
    link_euler_odd,
    szafraniec_setup,
    variety_link_euler,
)
from .oracle import OracleConfig, pl_sphere_degree, winding_degree
from .polynomial import MapGerm, WeightedType, parse_polynomial
from .relations import (
    MilnorInvariants,
    aoki_semibranches,
    dutertre_mod2,
    fukui_D,
    isolated_milnor_chi,
    khimshiashvili_chi,
    verify_all,
)
from .standard_basis import GLOBAL, LOCAL, compute_standard_basis, quotient_basis

TASKS = ("degree", "link-euler", "link-euler-odd", "variety-link", "khimshiashvili",
         "isolated-milnor", "fukui", "aoki", "mod2", "verify")

KNOWN_KEYS = {"variables", "task", "polynomials", "weights", "weighted_degree", "target",
              "delta_sign", "milnor_ab_asserted", "milnor_chi", "k_max", "oracle", "comment"}


class JobError(ValueError):
    """Malformed job file."""

    code = "BAD_JOB"

    def to_dict(self):
        return {"code": self.code, "message": str(self)}


class Job:
    """A validated job."""

    def __init__(self, data):
        if not isinstance(data, dict):
            raise JobError("job must be a JSON object")
        unknown = set(data) - KNOWN_KEYS
        if unknown:
            raise JobError(f"unknown keys: {sorted(unknown)}")
        for key in ("variables", "task", "polynomials"):
            if key not in data:
                raise JobError(f"missing key {key!r}")
        self.task = data["task"]
        if self.task not in TASKS:
            raise JobError(f"unknown task {self.task!r}; expected one of {list(TASKS)}")
        V = data["variables"]
        if not isinstance(V, list) or not V or not all(isinstance(v, str) for v in V):
            raise JobError("variables must be a non-empty list of names")
        if len(set(V)) != len(V):
            raise JobError("duplicate variable names")
        self.variables = tuple(V)
        polys = data["polynomials"]
        if isinstance(polys, list):
            polys = {f"f{i + 1}": s for i, s in enumerate(polys)}
        if not isinstance(polys, dict) or not polys:
            raise JobError("polynomials must be a non-empty object or list")
        self.polynomials = {}
        for name, text in polys.items():
            if not isinstance(text, str):
                raise JobError(f"polynomial {name!r} must be a string")
            try:
                self.polynomials[name] = parse_polynomial(text, self.variables)
            except PolynomialParseError as exc:
                exc.polynomial = name
                raise
        self.data = data
        self.delta_sign = data.get("delta_sign", "+")
        if self.delta_sign not in ("+", "-"):
            raise JobError("delta_sign must be '+' or '-'")
        self.milnor_ab_asserted = bool(data.get("milnor_ab_asserted", False))
        self.k_max = data.get("k_max", 20)
        if not isinstance(self.k_max, int) or self.k_max < 1:
            raise JobError("k_max must be a positive integer")
        self.oracle = bool(data.get("oracle", False))
        mc = data.get("milnor_chi", {})
        if isinstance(mc, int):
            mc = {"given": mc}
        if not isinstance(mc, dict) or not all(isinstance(v, int) for v in mc.values()):
            raise JobError("milnor_chi must be an integer or an object of integers")
        self.milnor_chi = mc
        target = data.get("target")
        if target is not None and target not in self.polynomials:
            raise JobError(f"target {target!r} is not a polynomial name")
        self.target = target

    def weighted_type(self, name):
        """Weighted type for polynomial ``name``, or None if none was given."""
        w = self.data.get("weights")
        d = self.data.get("weighted_degree")
        if isinstance(w, dict):
            w = w.get(name)
        if isinstance(d, dict):
            d = d.get(name)
        if w is None and d is None:
            return None
        if w is None or d is None:
            raise JobError(f"weights and weighted_degree must both be given for {name!r}")
        if not isinstance(w, list) or len(w) != len(self.variables):
            raise JobError(f"weights for {name!r} must list one integer per variable")
        try:
            return WeightedType(tuple(w), d)
        except (TypeError, ValueError) as exc:
            raise JobError(f"bad weighted type for {name!r}: {exc}") from None

    def single(self):
        if self.target is not None:
            return self.target, self.polynomials[self.target]
        if len(self.polynomials) != 1:
            raise JobError(f"task {self.task!r} needs one polynomial or a 'target'")
        return next(iter(self.polynomials.items()))


def _oracle_degree(H, cfg):
    if H.n == 2:
        return winding_degree(H, cfg)
    if H.n == 3:
        return pl_sphere_degree(H, cfg)
    return None


def _with_oracle(out, key, H, deg, job):
    if not job.oracle:
        return
    od = _oracle_degree(H, OracleConfig())
    out[f"oracle_{key}"] = od if od is not None else "unavailable"
    if od is not None and od != deg:
        raise ConsistencyFail(f"oracle degree {od} differs from algebraic degree {deg} for {key}")


def _task_degree(job, order):
    H = MapGerm(tuple(job.polynomials.values()))
    out = {}
    if order == "global":
        sb = compute_standard_basis(list(H), GLOBAL)
        out["global_standard_basis"] = [str(g) for g in sb.generators]
        out["global_mu"] = quotient_basis(sb).dimension if sb.is_finite() else None
    alg = local_algebra(H)
    form = gram_form(H, alg=alg)
    sig = exact_signature(form.matrix)
    if sig.n_zero:
        raise ConsistencyFail("ELK form is degenerate")
    out.update({
        "degree": sig.signature,
        "mu": alg.dimension,
        "n_plus": sig.n_plus,
        "n_minus": sig.n_minus,
        "local_basis": [_monomial_str(m, job.variables) for m in alg.basis],
    })
    _with_oracle(out, "degree", H, sig.signature, job)
    return out


def _monomial_str(m, V):
    parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(V, m) if e]
    return "*".join(parts) or "1"


def _task_link(job, odd):
    name, f = job.single()
    w = job.weighted_type(name)
    if w is None:
        raise JobError("weights and weighted_degree are required")
    data = szafraniec_setup(f, w)
    res = link_euler_odd(f, w) if odd else link_euler(f, w)
    out = {
        "target": name, "chi": res.chi, "deg1": res.deg1, "deg2": res.deg2,
        "sphere_chi": res.sphere_chi, "p": data.p, "a": list(data.a),
        "omega": str(data.omega),
        "H1": [str(h) for h in data.H1], "H2": [str(h) for h in data.H2],
    }
    _with_oracle(out, "deg1", data.H1, res.deg1, job)
    _with_oracle(out, "deg2", data.H2, res.deg2, job)
    return out


def _task_verify(job):
    V = job.variables
    links, methods = [], {}
    for name, f in job.polynomials.items():
        chi, method = link_chi(f, job.weighted_type(name), k_max=job.k_max)
        links.append((name, 1, chi))
        methods[name] = {"chi": chi, "method": method}
    inv = MilnorInvariants(len(V), len(job.polynomials), None, job.milnor_ab_asserted)
    witnesses = {"links": links, "milnor_chi": sorted(job.milnor_chi.items())}
    report = verify_all(inv, witnesses)
    if report.hypothesis_refuted:
        print("milnorchi: computed links contradict the asserted Milnor conditions",
              file=sys.stderr)
    return {"links": methods, "consistency": report.to_dict()}


def run_job(job: Job, order="local"):
    """Compute the outputs of a job.  Engine failures propagate."""
    t = job.task
    if t == "degree":
        return _task_degree(job, order)
    if t == "link-euler":
        return _task_link(job, odd=False)
    if t == "link-euler-odd":
        return _task_link(job, odd=True)
    if t == "variety-link":
        chi, k = variety_link_euler(list(job.polynomials.values()), k_max=job.k_max)
        return {"chi": chi, "k": k}
    if t == "khimshiashvili":
        name, f = job.single()
        return {"target": name, "delta_sign": job.delta_sign,
                "chi": khimshiashvili_chi(f, job.delta_sign)}
    if t == "isolated-milnor":
        return {"chi": isolated_milnor_chi(list(job.polynomials.values()))}
    if t == "fukui":
        name, f = job.single()
        return {"target": name, "delta_sign": job.delta_sign, "D": fukui_D(f, job.delta_sign)}
    if t == "aoki":
        polys = dict(job.polynomials)
        fn = polys.pop("fn", None)
        return {"semibranches": aoki_semibranches(list(polys.values()), fn)}
    if t == "mod2":
        return {"bit": dutertre_mod2(list(job.polynomials.values()))}
    return _task_verify(job)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


def build_report(data, order="local", oracle=False):
    """Return (exit_code, report dict)."""
    report = {"engine": {"name": "milnorchi", "version": __version__}}
    start = time.perf_counter()
    try:
        if oracle and isinstance(data, dict):
            data = dict(data, oracle=True)
        job = Job(data)
        report["task"] = job.task
        report["inputs"] = {
            "variables": list(job.variables),
            "polynomials": {k: str(p) for k, p in job.polynomials.items()},
            "order": order,
        }
        for key in ("weights", "weighted_degree", "target", "delta_sign",
                    "milnor_ab_asserted", "milnor_chi", "k_max"):
            if key in data:
                report["inputs"][key] = data[key]
        report["outputs"] = run_job(job, order)
        code = 0
    except PolynomialParseError as exc:
        err = exc.to_dict()
        if getattr(exc, "polynomial", None) is not None:
            err["polynomial"] = exc.polynomial
        report["error"] = err
        code = 1
    except JobError as exc:
        report["error"] = exc.to_dict()
        code = 1
    except EngineError as exc:
        report["error"] = exc.to_dict()
        code = 2
    except (ValueError, TypeError) as exc:
        # validation failures inside the engine (wrong arity, bad sign token, ...)
        report["error"] = {"code": "BAD_INPUT", "message": str(exc)}
        code = 1
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return code, report


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2, default=_jsonable) + "\n"


def _write_atomic(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".milnorchi-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def fixture_names():
    root = resources.files("milnorchi") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name):
    if name.endswith(".json"):
        name = name[:-5]
    path = resources.files("milnorchi") / "fixtures" / f"{name}.json"
    if not path.is_file():
        raise FileNotFoundError(f"no fixture {name!r}; available: {', '.join(fixture_names())}")
    return json.loads(path.read_text())


def main(argv=None):
    ap = argparse.ArgumentParser(prog="milnorchi", description=__doc__.splitlines()[0])
    ap.add_argument("job", nargs="?", help="job file (JSON)")
    ap.add_argument("--out", help="write the report here instead of standard output")
    ap.add_argument("--oracle", action="store_true",
                    help="cross-check degrees with the geometric oracle (n = 2, 3)")
    ap.add_argument("--order", choices=("local", "global"), default="local",
                    help="also report a global standard basis (degree task, debugging)")
    ap.add_argument("--fixture", help="run a shipped example instead of a job file")
    ap.add_argument("--list-fixtures", action="store_true", help="list shipped examples")
    args = ap.parse_args(argv)

    if args.list_fixtures:
        print("\n".join(fixture_names()))
        return 0
    if (args.job is None) == (args.fixture is None):
        ap.error("give exactly one of a job file or --fixture")
    try:
        if args.fixture:
            data = load_fixture(args.fixture)
        else:
            with open(args.job) as fh:
                data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        code, report = 1, {"engine": {"name": "milnorchi", "version": __version__},
                           "error": {"code": "BAD_JOB", "message": str(exc)}}
    else:
        code, report = build_report(data, args.order, args.oracle)
    text = dumps(report)
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
