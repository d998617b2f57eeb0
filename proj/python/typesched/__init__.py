"""Approximation schemes for scheduling on unrelated machines of few types.

Instances and schedules are plain dicts in the JSON layout the command line
tool reads and writes. Exact rationals come back as ``fractions.Fraction``.
"""

import json
from fractions import Fraction

from . import _typesched
from ._typesched import BadSpec, BudgetExhausted, TooLarge

__all__ = [
    "BadSpec",
    "BudgetExhausted",
    "TooLarge",
    "generate_instance",
    "digest",
    "makespan",
    "norm_power",
    "oracle",
    "solve_makespan",
    "solve_lp",
    "run_experiment",
    "f_threshold",
    "calibrate_lp_eps",
]


def _text(value):
    return str(Fraction(value))


def _dump(obj):
    return json.dumps(obj, sort_keys=True)


def generate_instance(jobs, machines, dims=1, cost_lo=1, cost_hi=10, seed=1):
    return json.loads(_typesched.generate_instance(jobs, list(machines), dims, cost_lo, cost_hi, seed))


def digest(instance):
    return _typesched.digest(_dump(instance))


def makespan(instance, schedule):
    return Fraction(_typesched.makespan(_dump(instance), _dump(schedule)))


def norm_power(instance, schedule, p=2):
    """Sum of load**p; a Fraction for integer p, a float otherwise."""
    text = _typesched.norm_power(_dump(instance), _dump(schedule), _text(p))
    return Fraction(text) if Fraction(p).denominator == 1 else float(text)


def oracle(instance, objective="makespan", p=2):
    out = json.loads(_typesched.oracle(_dump(instance), objective, _text(p)))
    if out["optimum"] is not None:
        out["optimum"] = Fraction(out["optimum"])
    return out


def _solve(instance, objective, p, eps, mode, enum_budget, cp_tol_override, certificate):
    cert = None if certificate is None else _dump(certificate)
    return json.loads(
        _typesched.solve(_dump(instance), objective, _text(p), _text(eps), mode, enum_budget, cp_tol_override, cert)
    )


def solve_makespan(instance, eps=Fraction(1, 2), mode="guided", enum_budget=1_000_000, certificate=None):
    """Guided mode without a certificate asks the oracle for one."""
    out = _solve(instance, "makespan", 2, eps, mode, enum_budget, None, certificate)
    out["makespan"] = Fraction(out["makespan"])
    return out


def solve_lp(instance, p=2, eps=Fraction(1, 2), mode="guided", enum_budget=1_000_000, cp_tol_override=None,
             certificate=None):
    out = _solve(instance, "lp", p, eps, mode, enum_budget, cp_tol_override, certificate)
    if isinstance(out["norm_power"], str):
        out["norm_power"] = Fraction(out["norm_power"])
    return out


def run_experiment(objective="makespan", p=2, eps=Fraction(1, 2), mode="guided", enum_budget=1_000_000, seed=1,
                   trials=1, jobs_max=7, types=2, machines_max=4, total_machines=4, dims_max=1, cost_lo=1,
                   cost_hi=10):
    return json.loads(
        _typesched.run_experiment(objective, _text(p), _text(eps), mode, enum_budget, seed, trials, jobs_max, types,
                                  machines_max, total_machines, dims_max, cost_lo, cost_hi)
    )


def f_threshold(p, eps):
    return _typesched.f_threshold(_text(p), _text(eps))


def calibrate_lp_eps(eps):
    return Fraction(_typesched.calibrate_lp_eps(_text(eps)))
