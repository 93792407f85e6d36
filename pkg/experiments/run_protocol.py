"""Run the full evaluation protocol stage by stage into ``results/``.

Stages whose output file already exists are skipped, so an interrupted run can
simply be restarted. The acceptance suite reads the files written here.

    python experiments/run_protocol.py [--out results] [--stages a,b,...]
"""

from __future__ import annotations

import argparse
import logging
import time
from pathlib import Path

from metaacl.harness import report, runner
from metaacl.harness.history_io import load_history

log = logging.getLogger("protocol")

TABLE_CONDITIONS = ("random", "alpgmm", "again_r", "again_rnd", "again_gt", "in_r", "again_t",
                    "in_t", "again_p", "in_p", "adr")
FRACTIONS = (0.025, 0.05, 0.1, 0.25, 0.5, 1.0)
STAGES = ("classroom4", "table", "two_run", "classroom400", "sweep_again_r", "alpgmm_all",
          "sweep_in_r")


def _ticker(label: str, total: int):
    state = {"n": 0, "t0": time.time()}

    def tick(_):
        state["n"] += 1
        el = time.time() - state["t0"]
        log.info("%s %d/%d (%.0fs elapsed)", label, state["n"], total, el)

    return tick


def stage_classroom4(out: Path, cfg: runner.ExperimentConfig) -> None:
    path = out / "history_4types.jsonl"
    if path.exists():
        return
    runner.gen_classroom(128, runner.FOUR_TYPES, cfg.master_seed, path,
                         cfg.replace(condition="alpgmm"), progress=_ticker("classroom4", 128))


def stage_table(out: Path, cfg: runner.ExperimentConfig) -> None:
    history = load_history(out / "history_4types.jsonl")
    for cond in TABLE_CONDITIONS:
        path = out / "table" / f"{cond}.csv"
        if path.exists():
            continue
        c = cfg.replace(condition=cond, seeds=48, types="four")
        recs = runner.run_condition(c, history, progress=_ticker(cond, c.seeds))
        report.write_results(recs, path)


def stage_two_run(out: Path, cfg: runner.ExperimentConfig) -> None:
    import csv

    path = out / "two_run.csv"
    if path.exists():
        return
    rows = runner.two_run(cfg.replace(condition="alpgmm", seeds=20),
                          progress=_ticker("two_run", 20))
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, list(rows[0]))
        w.writeheader()
        w.writerows(rows)


def stage_classroom400(out: Path, cfg: runner.ExperimentConfig) -> None:
    path = out / "history_400types.jsonl"
    if path.exists():
        return
    runner.gen_classroom(400, runner.ALL_TYPES, cfg.master_seed, path,
                         cfg.replace(condition="alpgmm"), one_per_type=True,
                         progress=_ticker("classroom400", 400))


def _sweep(out: Path, cfg: runner.ExperimentConfig, cond: str) -> None:
    history = load_history(out / "history_400types.jsonl")
    for f in FRACTIONS:
        path = out / "sweep" / f"{cond}_{f:g}.csv"
        if path.exists():
            continue
        c = cfg.replace(condition=cond, seeds=96, types="all")
        res = runner.classroom_size_sweep(history, [f], c, [cond],
                                          progress=_ticker(f"{cond}@{f:g}", 96))
        report.write_results(res["records"], path)


def stage_alpgmm_all(out: Path, cfg: runner.ExperimentConfig) -> None:
    path = out / "sweep" / "alpgmm_all.csv"
    if path.exists():
        return
    c = cfg.replace(condition="alpgmm", seeds=96, types="all")
    report.write_results(runner.run_condition(c, progress=_ticker("alpgmm_all", 96)), path)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results")
    ap.add_argument("--stages", default=",".join(STAGES))
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cfg = runner.ExperimentConfig(master_seed=args.seed)
    actions = {
        "classroom4": stage_classroom4,
        "table": stage_table,
        "two_run": stage_two_run,
        "classroom400": stage_classroom400,
        "sweep_again_r": lambda o, c: _sweep(o, c, "again_r"),
        "alpgmm_all": stage_alpgmm_all,
        "sweep_in_r": lambda o, c: _sweep(o, c, "in_r"),
    }
    for name in args.stages.split(","):
        log.info("stage %s", name)
        actions[name](out, cfg)
    log.info("done")


if __name__ == "__main__":
    main()
