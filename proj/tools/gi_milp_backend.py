#!/usr/bin/env python3
"""MILP/LP backend adapter.

Reads LP files (the subset this project emits), solves them with HiGHS via
scipy, and writes a solution file next to each input:

    status <optimal|feasible|infeasible|timeout>
    objective <real>
    <name> <value>
    ...

Usage: gi_milp_backend.py [--relax] [--time-limit S] [--threads N] model.lp [more.lp ...]
For a single input an explicit output path may follow it.
"""

import argparse
import math
import os
import re
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|[-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?|<=|>=|=|\+|-")


class Model:
    def __init__(self):
        self.names = []
        self.index = {}
        self.objective = {}
        self.rows = []  # (terms dict, sense, rhs)
        self.binary = set()

    def var(self, name):
        if name not in self.index:
            self.index[name] = len(self.names)
            self.names.append(name)
        return self.index[name]


def parse_terms(tokens, model):
    """Parses `coef name (+|- coef name)*` and returns (terms, rest)."""
    terms = {}
    sign = 1.0
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok in ("<=", ">=", "="):
            break
        if tok == "+":
            sign = 1.0
            i += 1
            continue
        if tok == "-":
            sign = -1.0
            i += 1
            continue
        coef = sign * float(tok)
        name = tokens[i + 1]
        vi = model.var(name)
        terms[vi] = terms.get(vi, 0.0) + coef
        sign = 1.0
        i += 2
    return terms, tokens[i:]


def parse_lp(text):
    model = Model()
    section = None
    pending = []

    def flush_constraint():
        nonlocal pending
        if not pending:
            return
        tokens = pending
        pending = []
        terms, rest = parse_terms(tokens, model)
        if not rest:
            raise ValueError("constraint without a sense: %r" % tokens)
        sense = rest[0]
        rhs = float(rest[1])
        model.rows.append((terms, sense, rhs))

    for raw in text.splitlines():
        line = raw.split("\\")[0].strip()
        if not line:
            continue
        lowered = line.lower()
        if lowered in ("minimize", "maximise", "maximize", "subject to", "bounds", "binaries",
                       "binary", "general", "end"):
            flush_constraint()
            section = lowered
            continue
        if section == "minimize":
            body = line.split(":", 1)[-1]
            tokens = TOKEN.findall(body)
            terms, rest = parse_terms(tokens, model)
            if rest:
                raise ValueError("unexpected tokens in objective: %r" % rest)
            for vi, coef in terms.items():
                model.objective[vi] = model.objective.get(vi, 0.0) + coef
        elif section == "subject to":
            if ":" in line:
                flush_constraint()
                line = line.split(":", 1)[1]
            pending.extend(TOKEN.findall(line))
            if len(pending) >= 2 and pending[-2] in ("<=", ">=", "="):
                flush_constraint()
        elif section == "bounds":
            model.var(TOKEN.findall(line)[0])  # nonnegative default; nothing else emitted
        elif section in ("binaries", "binary"):
            for name in TOKEN.findall(line):
                model.binary.add(model.var(name))
    flush_constraint()
    return model


def solve(model, relax, time_limit):
    n = len(model.names)
    c = np.zeros(n)
    for vi, coef in model.objective.items():
        c[vi] = coef
    lb = np.zeros(n)
    ub = np.full(n, np.inf)
    integrality = np.zeros(n)
    for vi in model.binary:
        ub[vi] = 1.0
        if not relax:
            integrality[vi] = 1
    constraints = []
    for terms, sense, rhs in model.rows:
        row = np.zeros(n)
        for vi, coef in terms.items():
            row[vi] = coef
        if sense == "<=":
            constraints.append(LinearConstraint(row, -np.inf, rhs))
        elif sense == ">=":
            constraints.append(LinearConstraint(row, rhs, np.inf))
        else:
            constraints.append(LinearConstraint(row, rhs, rhs))

    options = {"mip_rel_gap": 1e-9}
    if time_limit is not None:
        options["time_limit"] = max(0.0, time_limit)
    res = milp(c=c, constraints=constraints, integrality=integrality,
               bounds=Bounds(lb, ub), options=options)

    if res.status == 0:
        status = "optimal"
    elif res.status == 1:
        status = "feasible" if res.x is not None else "timeout"
    elif res.status == 2:
        status = "infeasible"
    else:
        status = "timeout" if res.x is None else "feasible"
    objective = res.fun if res.fun is not None and not math.isnan(res.fun) else 0.0
    values = res.x if res.x is not None else None
    return status, objective, values


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--relax", action="store_true")
    parser.add_argument("--time-limit", type=float, default=None)
    parser.add_argument("--threads", type=int, default=1)  # accepted; HiGHS decides
    parser.add_argument("paths", nargs="+")
    args = parser.parse_args()

    jobs = []
    paths = args.paths
    if len(paths) == 2 and paths[0].endswith(".lp") and not paths[1].endswith(".lp"):
        jobs.append((paths[0], paths[1]))
    else:
        for p in paths:
            root, _ = os.path.splitext(p)
            jobs.append((p, root + ".sol"))

    for lp_path, sol_path in jobs:
        with open(lp_path, "r", encoding="utf-8") as fh:
            model = parse_lp(fh.read())
        status, objective, values = solve(model, args.relax, args.time_limit)
        with open(sol_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("status %s\n" % status)
            fh.write("objective %.17g\n" % objective)
            if values is not None:
                for name, value in zip(model.names, values):
                    fh.write("%s %.17g\n" % (name, value))
    return 0


if __name__ == "__main__":
    sys.exit(main())
