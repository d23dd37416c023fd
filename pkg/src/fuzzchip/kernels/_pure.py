"""Pure-Python composition kernels, mirroring _fast.pyx line for line.

Selected automatically when the compiled extension is unavailable.  Slow
but dependency-free; the benchmark in benchmarks/bench_kernels.py compares
the two backends.
"""

import numpy as np


def minmax_fill(ant, con, levels, activations, memberships):
    ant_l = ant.tolist()
    con_l = con.tolist()
    levels_l = levels.tolist()
    n_inputs = ant.shape[1]
    n_outputs = con.shape[1]
    rules = range(ant.shape[0])

    act_rows = []
    memb_rows = []
    for state in levels_l:
        acts = []
        for r in rules:
            rule_ant = ant_l[r]
            a = 15
            for j in range(n_inputs):
                v = rule_ant[j][state[j]]
                if v < a:
                    a = v
            acts.append(a)
        act_rows.append(acts)
        per_output = []
        for o in range(n_outputs):
            vec = []
            for k in range(16):
                best = 0
                for r in rules:
                    c = con_l[r][o][k]
                    m = acts[r] if acts[r] < c else c
                    if m > best:
                        best = m
                vec.append(best)
            per_output.append(vec)
        memb_rows.append(per_output)

    activations[...] = np.asarray(act_rows, dtype=np.uint8).reshape(activations.shape)
    memberships[...] = np.asarray(memb_rows, dtype=np.uint8).reshape(memberships.shape)


def product_fill(ant, con, levels, activations, memberships):
    ant_l = ant.tolist()
    con_l = con.tolist()
    levels_l = levels.tolist()
    n_inputs = ant.shape[1]
    n_outputs = con.shape[1]
    rules = range(ant.shape[0])

    act_rows = []
    memb_rows = []
    for state in levels_l:
        acts = []
        for r in rules:
            rule_ant = ant_l[r]
            a = 15
            for j in range(n_inputs):
                v = rule_ant[j][state[j]]
                if v < a:
                    a = v
            acts.append(a)
        act_rows.append(acts)
        per_output = []
        for o in range(n_outputs):
            vec = []
            for k in range(16):
                best = 0
                for r in rules:
                    m = acts[r] * con_l[r][o][k]
                    if m > best:
                        best = m
                vec.append(best)
            per_output.append(vec)
        memb_rows.append(per_output)

    activations[...] = np.asarray(act_rows, dtype=np.uint8).reshape(activations.shape)
    memberships[...] = np.asarray(memb_rows, dtype=np.uint8).reshape(memberships.shape)
