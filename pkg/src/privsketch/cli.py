"""Command-line harness: ingestion, synthetic data, one-shot and streaming
releases, private sparsity selection, and a CSV benchmark.

Subcommands: synth, transform, release, choose-s, stream, bench. Options can
also come from a flat key=value config file; explicit flags win. Output is
CSV/text only; plotting is left to external tools.
"""

from __future__ import annotations

import argparse
import contextlib
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from . import bases, continual, mechanism, privacy, seeds

CSV_HEADER = "mechanism,basis,n,S,k,epsilon,trial,seed,l2_error,wall_ms"
MECHANISMS = ("cm", "lm", "cmco", "contm")
DEFAULT_EPSILONS = (1.0, 0.1, 0.01, 0.001, 0.00001)


class ConfigError(ValueError):
    """Invalid experiment configuration; reported before any run starts."""


# ---------------------------------------------------------------------------
# data in


def _csv_field(line: str, column: int, path: str, lineno: int) -> str:
    parts = line.split(",")
    if column >= len(parts):
        raise ValueError(f"{path}: line {lineno}: no column {column} in {line!r}")
    return parts[column].strip()


def ingest(path: str, fmt: str = "lines") -> np.ndarray:
    """Read one real value per record from a file, or stdin when path is '-'.

    ``lines`` expects one number per line; ``csv:<col>`` picks a 0-based
    column and skips a leading header row if that column does not parse.
    """
    if fmt == "lines":
        column = None
    elif fmt.startswith("csv:"):
        try:
            column = int(fmt.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad format {fmt!r}; expected csv:<column>") from None
    else:
        raise ValueError(f"unknown format {fmt!r}; expected 'lines' or 'csv:<column>'")

    values: list[float] = []
    source = contextlib.nullcontext(sys.stdin) if path == "-" else open(path)
    with source as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            text = line if column is None else _csv_field(line, column, path, lineno)
            try:
                values.append(float(text))
            except ValueError:
                if column is not None and lineno == 1 and not values:
                    continue  # header row
                raise ValueError(
                    f"{path}: line {lineno}: cannot parse {text!r} as a number"
                ) from None
    if not values:
        raise ValueError(f"{path}: no records")
    return np.asarray(values, dtype=float)


# ---------------------------------------------------------------------------
# synthetic data


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for a synthetic data vector, defined by its coefficients.

    exact-sparse: S coefficients of the given magnitude with random signs at
    random positions. compressible: sorted coefficient magnitudes decay as
    R * i^(-1/p), random signs, randomly permuted positions.
    """

    kind: str  # "exact-sparse" | "compressible"
    n: int
    basis_kind: str = "haar"
    S: int = 0
    p: float = 0.5
    R: float = 1.0
    magnitude: float = 1.0


def synth(spec: SynthSpec, seed: int) -> np.ndarray:
    """Draw the data vector described by ``spec``, reproducibly from the seed."""
    if spec.n < 1:
        raise ValueError("n must be at least 1")
    basis = bases.build_basis(spec.basis_kind, spec.n)
    rng = seeds.derive_rng(seed, seeds.SYNTH)
    m = basis.padded_n
    x = np.zeros(m)
    if spec.kind == "exact-sparse":
        if not 0 <= spec.S <= m:
            raise ValueError(f"S must lie in [0, {m}]")
        support = rng.choice(m, size=spec.S, replace=False)
        x[support] = spec.magnitude * rng.choice([-1.0, 1.0], size=spec.S)
    elif spec.kind == "compressible":
        if not 0.0 < spec.p < 1.0:
            raise ValueError("decay parameter p must lie in (0, 1)")
        if spec.R <= 0:
            raise ValueError("magnitude R must be positive")
        mags = spec.R * np.arange(1, m + 1, dtype=float) ** (-1.0 / spec.p)
        x[rng.permutation(m)] = mags * rng.choice([-1.0, 1.0], size=m)
    else:
        raise ValueError(f"unknown synthetic kind {spec.kind!r}")
    return bases.inverse(basis, x)


# ---------------------------------------------------------------------------
# experiment configuration


@dataclass
class ExperimentConfig:
    mechanisms: tuple[str, ...] = ("cm", "lm")
    basis: str = "haar"
    n: int = 1024  # dimension for one-shot runs, horizon for streaming runs
    S: int | None = None  # None => private selection (cm only)
    epsilons: tuple[float, ...] = DEFAULT_EPSILONS
    trials: int = 10
    seed: int = 0
    data: str = "synth:exact-sparse"  # file path or synth:<kind>
    fmt: str = "lines"
    data_s: int | None = None  # synthetic coefficient count; defaults to S or 16
    p: float = 0.5
    R: float = 1.0
    magnitude: float = 1.0
    select_fraction: float = 0.1
    C: float = 4.0
    C2: float = 1.0
    C3: float = 4.0
    C4: float = 1.0
    C5: float = 1.0
    delta_conf: float = 0.01
    noise_enabled: bool = True
    private: bool = False
    timing: bool = False
    workers: int = 1
    report_every: int | None = None  # streaming runs; None => final time only
    out: str | None = None

    def validate(self) -> None:
        if not self.mechanisms:
            raise ConfigError("at least one mechanism is required")
        unknown = [m for m in self.mechanisms if m not in MECHANISMS]
        if unknown:
            raise ConfigError(f"unknown mechanisms {unknown}; expected subset of {MECHANISMS}")
        if self.basis not in bases.BASIS_KINDS:
            raise ConfigError(f"unknown basis {self.basis!r}")
        if self.n < 1:
            raise ConfigError("n must be at least 1")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if not self.epsilons or any(e <= 0 for e in self.epsilons):
            raise ConfigError("epsilon grid must be nonempty and strictly positive")
        if self.private and not self.noise_enabled:
            raise ConfigError("noise=off is refused in private mode")
        if "cmco" in self.mechanisms and self.S is None:
            raise ConfigError("cmco requires an explicit sparsity S")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")

    def privacy_params(self, epsilon: float) -> privacy.PrivacyParams:
        return privacy.PrivacyParams(
            epsilon=epsilon,
            select_fraction=self.select_fraction,
            delta_conf=self.delta_conf,
            C=self.C,
            C2=self.C2,
            C3=self.C3,
            C4=self.C4,
            C5=self.C5,
            noise_enabled=self.noise_enabled,
        )


def load_config(path: str) -> dict[str, str]:
    """Flat key=value file; blank lines and #-comments are ignored."""
    out: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}: line {lineno}: expected key=value")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


_BOOLISH = {"on": True, "off": False, "true": True, "false": False, "1": True, "0": False}


def _parse_bool(value: str, key: str) -> bool:
    try:
        return _BOOLISH[value.lower()]
    except KeyError:
        raise ConfigError(f"{key} must be on/off, got {value!r}") from None


def config_from_mapping(values: dict[str, str]) -> ExperimentConfig:
    """Build a config from string key=value pairs (file contents or flags)."""
    cfg = ExperimentConfig()
    known = {f.name for f in fields(ExperimentConfig)}
    aliases = {"format": "fmt", "noise": "noise_enabled", "epsilon": "epsilons"}
    for raw_key, value in values.items():
        key = aliases.get(raw_key, raw_key)
        if key not in known:
            raise ConfigError(f"unknown config key {raw_key!r}")
        if key == "mechanisms":
            cfg.mechanisms = tuple(m.strip() for m in value.split(",") if m.strip())
        elif key == "epsilons":
            try:
                cfg.epsilons = tuple(float(e) for e in value.split(",") if e.strip())
            except ValueError:
                raise ConfigError(f"bad epsilon grid {value!r}") from None
        elif key in ("S", "data_s", "report_every"):
            setattr(cfg, key, int(value) if value != "" else None)
        elif key in ("n", "trials", "seed", "workers"):
            setattr(cfg, key, int(value))
        elif key in ("p", "R", "magnitude", "select_fraction", "C", "C2", "C3", "C4", "C5", "delta_conf"):
            setattr(cfg, key, float(value))
        elif key in ("noise_enabled", "private", "timing"):
            setattr(cfg, key, _parse_bool(value, raw_key))
        else:  # basis, data, fmt, out
            setattr(cfg, key, value)
    return cfg


def _load_bench_data(cfg: ExperimentConfig) -> np.ndarray:
    if cfg.data.startswith("synth:"):
        kind = cfg.data.split(":", 1)[1]
        coeff_count = cfg.data_s if cfg.data_s is not None else (cfg.S if cfg.S is not None else 16)
        spec = SynthSpec(
            kind=kind,
            n=cfg.n,
            basis_kind=cfg.basis,
            S=coeff_count,
            p=cfg.p,
            R=cfg.R,
            magnitude=cfg.magnitude,
        )
        return synth(spec, cfg.seed)
    d = ingest(cfg.data, cfg.fmt)
    if d.size != cfg.n:
        raise ConfigError(f"data file has {d.size} records but n={cfg.n}")
    return d


# ---------------------------------------------------------------------------
# benchmark


@dataclass(frozen=True)
class BenchTask:
    mech_index: int
    eps_index: int
    trial: int
    mechanism: str
    epsilon: float
    trial_seed: int


@dataclass
class BenchRow:
    mechanism: str
    basis: str
    n: int
    S: int | None
    k: int | None
    epsilon: float
    trial: str
    seed: int | None
    l2_error: float
    wall_ms: float | None

    def render(self) -> str:
        s = "" if self.S is None else str(self.S)
        k = "" if self.k is None else str(self.k)
        seed = "" if self.seed is None else str(self.seed)
        wall = "" if self.wall_ms is None else f"{self.wall_ms:.3f}"
        return (
            f"{self.mechanism},{self.basis},{self.n},{s},{k},"
            f"{_fmt(self.epsilon)},{self.trial},{seed},{_fmt(self.l2_error)},{wall}"
        )


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def _run_stream(cfg: ExperimentConfig, data: np.ndarray, task: BenchTask):
    T = data.size
    if task.mechanism == "cmco":
        state = continual.make_cmco(
            T, cfg.S, cfg.basis, task.epsilon, task.trial_seed,
            C=cfg.C, delta_conf=cfg.delta_conf, noise_enabled=cfg.noise_enabled,
        )
        for value in data:
            continual.cmco_update(state, value)
        d_star = continual.cmco_reconstruct(state)
        return mechanism.l2_error(data, d_star), cfg.S, state.k
    state = continual.make_differencing(T, task.epsilon, task.trial_seed, noise_enabled=cfg.noise_enabled)
    for value in data:
        continual.differencing_update(state, value)
    return mechanism.l2_error(data, continual.differencing_reconstruct(state)), None, None


def run_task(cfg: ExperimentConfig, data: np.ndarray, task: BenchTask) -> BenchRow:
    """Execute one (mechanism, epsilon, trial) cell of the benchmark grid."""
    params = cfg.privacy_params(task.epsilon)
    started = time.perf_counter()
    if task.mechanism == "cm":
        basis = bases.build_basis(cfg.basis, data.size)
        record = mechanism.release(data, basis, params, task.trial_seed, S=cfg.S)
        err, s_used, k_used = record.l2_error, record.S_used, record.k_used
    elif task.mechanism == "lm":
        record = mechanism.laplacian_baseline(data, task.epsilon, task.trial_seed, params)
        err, s_used, k_used = record.l2_error, None, None
    else:
        err, s_used, k_used = _run_stream(cfg, data, task)
    wall_ms = (time.perf_counter() - started) * 1000.0
    return BenchRow(
        mechanism=task.mechanism,
        basis=cfg.basis,
        n=data.size,
        S=s_used,
        k=k_used,
        epsilon=task.epsilon,
        trial=str(task.trial),
        seed=task.trial_seed,
        l2_error=err,
        wall_ms=wall_ms if cfg.timing else None,
    )


def _bench_tasks(cfg: ExperimentConfig) -> list[BenchTask]:
    tasks = []
    for mi, mech in enumerate(cfg.mechanisms):
        for ei, eps in enumerate(cfg.epsilons):
            for trial in range(cfg.trials):
                tasks.append(
                    BenchTask(
                        mech_index=mi,
                        eps_index=ei,
                        trial=trial,
                        mechanism=mech,
                        epsilon=eps,
                        trial_seed=seeds.derive_seed(cfg.seed, seeds.TRIAL, mi, ei, trial),
                    )
                )
    return tasks


def run_bench(cfg: ExperimentConfig) -> list[str]:
    """Run the whole grid and return the CSV lines (header, trials, summaries).

    Deterministic given the seed: trial rows appear in (mechanism, epsilon,
    trial) order regardless of how many workers computed them, and the
    wall-clock column stays empty unless timing was requested.
    """
    cfg.validate()
    data = _load_bench_data(cfg)
    tasks = _bench_tasks(cfg)
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(run_task, [cfg] * len(tasks), [data] * len(tasks), tasks))
    else:
        rows = [run_task(cfg, data, task) for task in tasks]

    order = {(t.mechanism, t.epsilon, t.trial): i for i, t in enumerate(tasks)}
    rows.sort(key=lambda r: order[(r.mechanism, r.epsilon, int(r.trial))])

    lines = [CSV_HEADER]
    lines.extend(row.render() for row in rows)
    for mi, mech in enumerate(cfg.mechanisms):
        for ei, eps in enumerate(cfg.epsilons):
            group = [r for r in rows if r.mechanism == mech and r.epsilon == eps]
            errs = [r.l2_error for r in group]
            walls = [r.wall_ms for r in group if r.wall_ms is not None]
            for stat_name, stat in (("median", statistics.median), ("mean", statistics.fmean)):
                lines.append(
                    BenchRow(
                        mechanism=mech,
                        basis=cfg.basis,
                        n=group[0].n,
                        S=group[0].S,
                        k=group[0].k,
                        epsilon=eps,
                        trial=stat_name,
                        seed=None,
                        l2_error=stat(errs),
                        wall_ms=stat(walls) if walls else None,
                    ).render()
                )
    return lines


# ---------------------------------------------------------------------------
# subcommands


def _write_lines(lines, out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _write_vector(vec: np.ndarray, out: str | None) -> None:
    _write_lines([f"{v:.17g}" for v in vec], out)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    seed = seeds.fresh_seed()
    print(f"seed={seed}", file=sys.stderr)
    return seed


def _cmd_synth(args) -> int:
    spec = SynthSpec(
        kind=args.kind,
        n=args.n,
        basis_kind=args.basis,
        S=args.sparsity if args.sparsity is not None else 0,
        p=args.p,
        R=args.R,
        magnitude=args.magnitude,
    )
    _write_vector(synth(spec, _resolve_seed(args)), args.out)
    return 0


def _cmd_transform(args) -> int:
    d = ingest(args.input, args.format)
    basis = bases.build_basis(args.basis, d.size)
    _write_vector(bases.forward(basis, d), args.out)
    return 0


def _params_from_args(args, epsilon: float) -> privacy.PrivacyParams:
    return privacy.PrivacyParams(
        epsilon=epsilon,
        select_fraction=args.select_fraction,
        delta_conf=args.delta_conf,
        C=args.C,
        noise_enabled=args.noise != "off",
    )


def _cmd_release(args) -> int:
    d = ingest(args.input, args.format)
    seed = _resolve_seed(args)
    params = _params_from_args(args, args.epsilon)
    if args.mechanism == "cm":
        basis = bases.build_basis(args.basis, d.size)
        record = mechanism.release(d, basis, params, seed, S=args.sparsity)
    else:
        record = mechanism.laplacian_baseline(d, args.epsilon, seed, params)
    _write_vector(record.D_star, args.out)
    print(
        f"mechanism={record.mechanism} n={d.size} S={record.S_used} k={record.k_used} "
        f"epsilon_spent={_fmt(record.epsilon_spent)} l2_error={_fmt(record.l2_error)}",
        file=sys.stderr,
    )
    return 0


def _cmd_choose_s(args) -> int:
    d = ingest(args.input, args.format)
    seed = _resolve_seed(args)
    params = _params_from_args(args, args.epsilon)
    eps_select, eps_release = privacy.budget_split(params)
    basis = bases.build_basis(args.basis, d.size)
    chosen = mechanism.choose_sparsity(
        d, basis, eps_select, eps_release, params, seeds.derive_rng(seed, seeds.SELECTION)
    )
    print(chosen)
    return 0


def _cmd_stream(args) -> int:
    data = ingest(args.input, args.format)
    T = args.horizon if args.horizon is not None else data.size
    if data.size > T:
        raise ConfigError(f"stream has {data.size} values but the horizon is {T}")
    seed = _resolve_seed(args)
    noise_enabled = args.noise != "off"
    if args.mechanism == "cmco":
        if args.sparsity is None:
            raise ConfigError("cmco requires --sparsity")
        state = continual.make_cmco(
            T, args.sparsity, args.basis, args.epsilon, seed,
            C=args.C, delta_conf=args.delta_conf, noise_enabled=noise_enabled,
        )
        update, reconstruct_now = continual.cmco_update, continual.cmco_reconstruct
    else:
        state = continual.make_differencing(T, args.epsilon, seed, noise_enabled=noise_enabled)
        update, reconstruct_now = continual.differencing_update, continual.differencing_reconstruct

    every = args.report_every
    lines = ["t,l2_error"]
    for t, value in enumerate(data, start=1):
        update(state, value)
        if (every is not None and t % every == 0) or t == data.size:
            d_star = reconstruct_now(state)
            err = mechanism.l2_error(data[:t], d_star)
            lines.append(f"{t},{_fmt(err)}")
            if args.dump:
                lines.append(f"# D*_{t}: " + ",".join(f"{v:.9g}" for v in d_star))
    _write_lines(lines, args.out)
    return 0


def _cmd_bench(args) -> int:
    values: dict[str, str] = {}
    if args.config:
        values.update(load_config(args.config))
    for key in (
        "mechanisms", "basis", "n", "S", "epsilons", "trials", "seed", "data", "format",
        "data_s", "p", "R", "magnitude", "select_fraction", "C", "C2", "C3", "C4", "C5",
        "delta_conf", "noise", "workers", "out",
    ):
        flag = getattr(args, key.replace("-", "_"), None)
        if flag is not None:
            values[key] = str(flag)
    if args.timing:
        values["timing"] = "on"
    if args.private:
        values["private"] = "on"
    cfg = config_from_mapping(values)
    lines = run_bench(cfg)
    _write_lines(lines, cfg.out)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _add_common_io(parser, with_input: bool = True) -> None:
    if with_input:
        parser.add_argument("--input", required=True, help="input data file")
        parser.add_argument(
            "--format", default="lines", help="input format: lines or csv:<column>"
        )
    parser.add_argument("--out", default=None, help="output path (default: stdout)")
    parser.add_argument("--seed", type=int, default=None, help="64-bit seed (default: entropy)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="privsketch",
        description="Differentially private release of whole data vectors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic data vector")
    p.add_argument("--kind", choices=("exact-sparse", "compressible"), default="exact-sparse")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--basis", choices=bases.BASIS_KINDS, default="haar")
    p.add_argument("--sparsity", "-S", type=int, default=None)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--magnitude", type=float, default=1.0)
    _add_common_io(p, with_input=False)
    p.set_defaults(handler=_cmd_synth)

    p = sub.add_parser("transform", help="print the sparse-basis coefficients of a file")
    p.add_argument("--basis", choices=bases.BASIS_KINDS, default="haar")
    _add_common_io(p)
    p.set_defaults(handler=_cmd_transform)

    p = sub.add_parser("release", help="one-shot private release of a file")
    p.add_argument("--mechanism", choices=("cm", "lm"), default="cm")
    p.add_argument("--basis", choices=bases.BASIS_KINDS, default="haar")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--sparsity", "-S", type=int, default=None,
                   help="sparsity level; omit for private selection")
    p.add_argument("--select-fraction", type=float, default=0.1)
    p.add_argument("--delta-conf", type=float, default=0.01)
    p.add_argument("--C", type=float, default=4.0)
    p.add_argument("--noise", choices=("on", "off"), default="on")
    _add_common_io(p)
    p.set_defaults(handler=_cmd_release)

    p = sub.add_parser("choose-s", help="privately select a sparsity level")
    p.add_argument("--basis", choices=bases.BASIS_KINDS, default="haar")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--select-fraction", type=float, default=0.1)
    p.add_argument("--delta-conf", type=float, default=0.01)
    p.add_argument("--C", type=float, default=4.0)
    p.add_argument("--noise", choices=("on", "off"), default="on")
    _add_common_io(p)
    p.set_defaults(handler=_cmd_choose_s)

    p = sub.add_parser("stream", help="streaming private release of a file")
    p.add_argument("--mechanism", choices=("cmco", "contm"), default="cmco")
    p.add_argument("--basis", choices=bases.BASIS_KINDS, default="haar")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--sparsity", "-S", type=int, default=None)
    p.add_argument("--horizon", type=int, default=None, help="fixed horizon T (default: stream length)")
    p.add_argument("--report-every", type=int, default=None)
    p.add_argument("--dump", action="store_true", help="also dump each reported reconstruction")
    p.add_argument("--delta-conf", type=float, default=0.01)
    p.add_argument("--C", type=float, default=4.0)
    p.add_argument("--noise", choices=("on", "off"), default="on")
    _add_common_io(p)
    p.set_defaults(handler=_cmd_stream)

    p = sub.add_parser("bench", help="run an experiment grid and emit CSV")
    p.add_argument("--config", default=None, help="flat key=value config file")
    p.add_argument("--mechanisms", default=None, help="comma list from cm,lm,cmco,contm")
    p.add_argument("--basis", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--S", type=int, default=None)
    p.add_argument("--epsilons", default=None, help="comma list of budgets")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--data", default=None, help="file path or synth:<kind>")
    p.add_argument("--format", default=None)
    p.add_argument("--data-s", type=int, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--R", type=float, default=None)
    p.add_argument("--magnitude", type=float, default=None)
    p.add_argument("--select-fraction", type=float, default=None)
    p.add_argument("--C", type=float, default=None)
    p.add_argument("--C2", type=float, default=None)
    p.add_argument("--C3", type=float, default=None)
    p.add_argument("--C4", type=float, default=None)
    p.add_argument("--C5", type=float, default=None)
    p.add_argument("--delta-conf", type=float, default=None)
    p.add_argument("--noise", choices=("on", "off"), default=None)
    p.add_argument("--timing", action="store_true")
    p.add_argument("--private", action="store_true")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
