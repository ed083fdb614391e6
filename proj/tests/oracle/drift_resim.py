#!/usr/bin/env python3
"""Independent numpy re-simulation of the drift and nudge experiments.

Checks the drift thresholds (every option share >= 0.10, mean episode entropy >= 1.0 nats)
and the nudge collapse (final-window top share >= 0.80) on its own random numbers, then
compares the agencysim metrics for the same configurations within a few standard errors.
"""

import argparse
import csv
import math
import pathlib
import subprocess
import sys

import numpy as np

BASES = np.array([2.0, 4.0, 10.0, 100.0])
CONCENTRATION = 2.0
DELTA = 0.01
NUDGE = 0.005
TRUST = 10.0
STEPS = 10000
EPISODES = 100
WINDOW = 1000


def simulate(rng, nudge):
    n = len(BASES)
    shape_a = CONCENTRATION / BASES
    shape_b = CONCENTRATION - shape_a
    values = np.ones((EPISODES, n))
    rows = np.arange(EPISODES)
    choices = np.empty((STEPS, EPISODES), dtype=np.int64)
    total_reward = np.zeros(EPISODES)
    for t in range(STEPS):
        weights_boost = np.ones_like(values)
        if nudge:
            rec = np.argmax(values * (BASES * shape_a / CONCENTRATION), axis=1)
            values[rows, rec] += NUDGE * DELTA
            weights_boost[rows, rec] = TRUST
        values = np.maximum(values + rng.uniform(-DELTA, DELTA, values.shape), 0.0)
        w = values * weights_boost
        sums = w.sum(axis=1, keepdims=True)
        w = np.where(sums > 0, w / np.where(sums > 0, sums, 1.0), 1.0 / n)
        u = rng.random(EPISODES)[:, None]
        choice = np.minimum((u >= np.cumsum(w, axis=1)).sum(axis=1), n - 1)
        choices[t] = choice
        draw = rng.beta(shape_a[choice], shape_b[choice])
        total_reward += values[rows, choice] * BASES[choice] * draw
    return choices, total_reward


def shares(choices, n):
    return np.stack([(choices == i).mean(axis=0) for i in range(n)], axis=1)


def entropy(p):
    with np.errstate(divide="ignore", invalid="ignore"):
        return -np.nansum(np.where(p > 0, p * np.log(p), 0.0), axis=1)


def summarize(choices, total_reward):
    n = len(BASES)
    whole = shares(choices, n)
    late = shares(choices[-WINDOW:], n)
    return {
        "shares": whole.mean(axis=0),
        "mean_episode_entropy": entropy(whole),
        "final_window_dominance": late.max(axis=1),
        "final_window_entropy": entropy(late),
        "total_reward": total_reward,
    }


def read_metrics(path):
    with open(path, newline="") as f:
        return {row["metric"]: float(row["value"]) for row in csv.DictReader(f)}


def close(name, ours, theirs_mean, failures, k=5.0):
    se = ours.std(ddof=1) / math.sqrt(len(ours)) if ours.ndim else 0.0
    tol = k * math.sqrt(2.0) * se
    diff = abs(ours.mean() - theirs_mean)
    status = "ok" if diff <= tol else "MISMATCH"
    print(f"  {name}: oracle {ours.mean():.4f}  agencysim {theirs_mean:.4f}  |diff| {diff:.4f}  tol {tol:.4f}  {status}")
    if diff > tol:
        failures.append(name)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--agencysim", required=True)
    ap.add_argument("--workdir", required=True)
    ap.add_argument("--seed", type=int, default=20261016)
    args = ap.parse_args()
    work = pathlib.Path(args.workdir)
    work.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(args.seed)
    failures = []

    drift = summarize(*simulate(rng, nudge=False))
    print("drift (no agent)")
    low = drift["shares"].min()
    h = drift["mean_episode_entropy"].mean()
    print(f"  oracle thresholds: min share {low:.3f} >= 0.10, mean entropy {h:.3f} >= 1.0")
    if low < 0.10 or h < 1.0:
        failures.append("drift thresholds")

    nudge = summarize(*simulate(rng, nudge=True))
    print("nudge (dynamic agent)")
    d = nudge["final_window_dominance"].mean()
    print(f"  oracle threshold: final-window top share {d:.3f} >= 0.80; "
          f"reward {nudge['total_reward'].mean():.1f} > {drift['total_reward'].mean():.1f}")
    if d < 0.80 or nudge["total_reward"].mean() <= drift["total_reward"].mean():
        failures.append("nudge thresholds")

    for kind, ours in (("drift", drift), ("nudge", nudge)):
        out = work / kind
        subprocess.run([args.agencysim, kind, "--no-traces", "--out", str(out)], check=True,
                       stdout=subprocess.DEVNULL)
        theirs = read_metrics(out / "metrics.csv")
        print(f"agencysim {kind} vs oracle")
        close("mean_episode_entropy", ours["mean_episode_entropy"], theirs["mean_episode_entropy"], failures)
        close("final_window_dominance", ours["final_window_dominance"], theirs["final_window_dominance"], failures)
        close("final_window_entropy", ours["final_window_entropy"], theirs["final_window_entropy"], failures)
        close("total_reward", ours["total_reward"], theirs["total_reward"], failures)

    if failures:
        print("FAILED: " + ", ".join(failures))
        return 1
    print("oracle agrees")
    return 0


if __name__ == "__main__":
    sys.exit(main())
