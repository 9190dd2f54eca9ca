"""Experiment sweeps: paired trials, CSV persistence, reproducible seeds.

Every method requested for a trial runs on the identical instance, and a
trial's SNR values enter the CSV (and any averages) only when every
compared method satisfied all sign constraints, which is the validity
rule the studies use.  Per-trial seeds are mixed from (master seed, axis
index, trial index), so rerunning with any worker count reproduces the
same records in the same order.
"""

import concurrent.futures
import dataclasses
import functools
import io
import math

from ._validation import check_count
from .baselines import BihtParams, biht_solve, pv_solve
from .blind import BlindConfig, blind_solve
from .numerics import mix64
from .problem import generate_instance, snr_db

__all__ = [
    "METHODS",
    "SweepSpec",
    "TrialRecord",
    "aggregate_mean_snr",
    "parse_config",
    "records_to_csv",
    "run_method",
    "run_sweep",
    "sweep_spec_from_config",
    "write_csv",
]

METHODS = ("blind-mang", "blind-logdet", "biht-l1", "biht-l2", "pv-lp")
AXES = ("ratio", "sparsity", "dimension", "fixed")

CSV_FIELDS = (
    "trial_id",
    "method",
    "m",
    "n",
    "s_true",
    "seed",
    "snr_db",
    "violations",
    "support_size",
    "iterations",
    "wall_ms",
)


@dataclasses.dataclass(frozen=True)
class SweepSpec:
    """One experiment: an axis to vary, fixed dims, trials, and methods."""

    axis: str
    values: tuple
    n: int
    m: int
    s: int
    trials: int
    methods: tuple
    master_seed: int
    biht_sparsity: int | None = None  # defaults to the true sparsity
    schedules_enabled: bool = True

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.axis != "fixed" and not self.values:
            raise ValueError("a varying axis needs at least one value")
        if not self.methods:
            raise ValueError("methods must be nonempty")
        for method in self.methods:
            if method not in METHODS:
                raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
        check_count(self.trials, "trials")

    def points(self):
        """The (n, m, s) tuple at every axis value."""
        if self.axis == "fixed":
            return [(self.n, self.m, self.s)]
        out = []
        for value in self.values:
            if self.axis == "ratio":
                out.append((self.n, max(1, round(value * self.n)), self.s))
            elif self.axis == "sparsity":
                out.append((self.n, self.m, int(value)))
            else:  # dimension
                out.append((int(value), self.m, self.s))
        return out


@dataclasses.dataclass
class TrialRecord:
    """One (trial, method) row of a sweep CSV."""

    trial_id: int
    method: str
    m: int
    n: int
    s_true: int
    seed: int
    snr_db: float | None
    violations: int
    support_size: int
    iterations: int
    wall_ms: float | None


def run_method(method, instance, biht_sparsity=None, schedules_enabled=True):
    """Dispatch one solver by its CLI name."""
    if method == "blind-mang":
        return blind_solve(
            instance,
            "mangasarian",
            BlindConfig(schedules_enabled=schedules_enabled),
        )
    if method == "blind-logdet":
        return blind_solve(
            instance, "log-det", BlindConfig(schedules_enabled=schedules_enabled)
        )
    if method in ("biht-l1", "biht-l2"):
        sparsity = biht_sparsity if biht_sparsity is not None else instance.s_true
        return biht_solve(
            instance, BihtParams(sparsity=sparsity, variant=method[-2:])
        )
    if method == "pv-lp":
        return pv_solve(instance)
    raise ValueError(f"unknown method {method!r}")


def _run_trial(spec, axis_index, trial_index):
    """All methods on one fresh instance; returns this trial's rows."""
    n, m, s = spec.points()[axis_index]
    seed = mix64(spec.master_seed, axis_index, trial_index)
    instance = generate_instance(n, m, s, seed)
    results = {}
    failed = []
    for method in spec.methods:
        try:
            results[method] = run_method(
                method,
                instance,
                biht_sparsity=spec.biht_sparsity,
                schedules_enabled=spec.schedules_enabled,
            )
        except Exception:  # failures are recorded, never abort the sweep
            failed.append(method)
    valid = not failed and all(r.violations == 0 for r in results.values())
    rows = []
    for method in spec.methods:
        if method in results:
            res = results[method]
            snr = (
                snr_db(instance.x_true, res.x_est)
                if valid and res.x_est.any()
                else None
            )
            rows.append(
                TrialRecord(
                    trial_id=trial_index,
                    method=method,
                    m=m,
                    n=n,
                    s_true=instance.s_true,
                    seed=seed,
                    snr_db=snr,
                    violations=res.violations,
                    support_size=res.support_size,
                    iterations=res.iterations,
                    wall_ms=res.wall_time * 1000.0,
                )
            )
        else:
            rows.append(
                TrialRecord(trial_index, method, m, n, s, seed, None, -1, 0, 0, None)
            )
    return rows


def run_sweep(spec, jobs=1):
    """Run every (axis point, trial) and return the flat record list.

    Trials are independent, so ``jobs > 1`` fans them out over processes;
    records come back in deterministic (axis, trial, method) order either
    way.
    """
    jobs = check_count(jobs, "jobs")
    tasks = [
        (axis_index, trial_index)
        for axis_index in range(len(spec.points()))
        for trial_index in range(spec.trials)
    ]
    if jobs == 1:
        batches = [_run_trial(spec, *task) for task in tasks]
    else:
        worker = functools.partial(_trial_task, spec)
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(worker, tasks))
    return [row for batch in batches for row in batch]


def _trial_task(spec, task):
    return _run_trial(spec, *task)


def _format_field(value, field, include_timing):
    if field == "snr_db":
        if value is None:
            return "NA"
        if math.isinf(value):
            return "inf"
        return f"{value:.4f}"
    if field == "wall_ms":
        # Wall times vary run to run; they are reported only on request so
        # that rerunning a sweep reproduces the CSV byte for byte.
        if not include_timing or value is None:
            return "NA"
        return f"{value:.3f}"
    return str(value)


def records_to_csv(records, include_timing=False):
    """Render records as CSV text with a header row and ``NA`` markers."""
    out = io.StringIO()
    out.write(",".join(CSV_FIELDS) + "\n")
    for record in records:
        row = [
            _format_field(getattr(record, field), field, include_timing)
            for field in CSV_FIELDS
        ]
        out.write(",".join(row) + "\n")
    return out.getvalue()


def write_csv(records, path, include_timing=False):
    with open(path, "w", encoding="ascii", newline="\n") as handle:
        handle.write(records_to_csv(records, include_timing))


def aggregate_mean_snr(records):
    """Mean SNR over valid trials per ((m, n, s_true), method).

    Returns ``{key: (mean_snr or None, valid_count)}``; infinite SNRs
    (exact recovery) are averaged as-is, so a point with any exact trial
    reports ``inf``.
    """
    groups = {}
    for record in records:
        key = ((record.m, record.n, record.s_true), record.method)
        groups.setdefault(key, []).append(record.snr_db)
    out = {}
    for key, snrs in groups.items():
        valid = [v for v in snrs if v is not None]
        mean = sum(valid) / len(valid) if valid else None
        out[key] = (mean, len(valid))
    return out


# ---------------------------------------------------------------------------
# Config files: flat key=value lines, '#' comments.

_CONFIG_KEYS = {
    "axis",
    "values",
    "n",
    "m",
    "s",
    "trials",
    "methods",
    "master_seed",
    "biht_sparsity",
    "schedules_enabled",
}


def parse_config(text):
    """Parse flat ``key=value`` lines; unknown keys are errors."""
    config = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {line_no}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ValueError(f"line {line_no}: unknown key {key!r}")
        if key in config:
            raise ValueError(f"line {line_no}: duplicate key {key!r}")
        config[key] = value.strip()
    return config


def sweep_spec_from_config(config, full_scale=False):
    """Build a SweepSpec from a parsed config dict.

    ``full_scale`` swaps the desk-scale fixed dims for the studies' sizes
    (n and m to 1000 where they are fixed; axis values untouched).
    """
    missing = {"axis", "trials", "methods", "master_seed"} - set(config)
    if missing:
        raise ValueError(f"config missing required keys: {sorted(missing)}")
    axis = config["axis"]
    values_raw = config.get("values", "")
    values = tuple(float(tok) for tok in values_raw.split(",") if tok.strip())
    n = int(config.get("n", 200))
    m = int(config.get("m", 200))
    s = int(config.get("s", 4))
    if full_scale:
        if axis != "dimension":
            n = 1000
        if axis != "ratio":
            m = 1000
        s = 10
    return SweepSpec(
        axis=axis,
        values=values,
        n=n,
        m=m,
        s=s,
        trials=int(config["trials"]),
        methods=tuple(tok.strip() for tok in config["methods"].split(",") if tok.strip()),
        master_seed=int(config["master_seed"]),
        biht_sparsity=(
            int(config["biht_sparsity"]) if "biht_sparsity" in config else None
        ),
        schedules_enabled=config.get("schedules_enabled", "true").lower()
        not in ("false", "0", "no"),
    )
