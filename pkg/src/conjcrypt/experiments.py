"""One function per experiment, each returning a list of ``ExperimentRecord``."""

from __future__ import annotations

import itertools
import time
from contextlib import contextmanager

import numpy as np

from .attacks import (
    BREIDBART_ANGLE,
    angle_grid,
    breidbart_classical_distance,
    breidbart_distributions,
    breidbart_povm,
    breidbart_prob_difference,
    measurement_family_scan,
    sample_measurement,
)
from .classical import ComplexityProfile, complexity_estimates
from .densities import (
    analytic_distance,
    analytic_sigma_distance,
    hadamard_kraus_operators,
    hadamard_mixing_channel,
    kraus_completeness_error,
    rho_b_direct,
    sigma_b,
)
from .linalg import trace_distance
from .nosignal import empirical_eve_marginal, eve_marginal, random_qubit_povm, signalling_advantage
from .records import ExperimentRecord
from .scheme import Key, decrypt_message, encrypt_message, make_rng
from .unicity import DetectorConfig, deterministic_budget, probabilistic_budget, run_attacks


@contextmanager
def _clock(records: list, timing: bool):
    start = time.perf_counter()
    first = len(records)
    yield
    if timing:
        ms = (time.perf_counter() - start) * 1e3
        for r in records[first:]:
            r.wall_ms = ms


def encrypt_demo(k_values, n: int, seed: int, trials: int, timing: bool = False) -> list[ExperimentRecord]:
    """Round trips with the right key, and bit error rate with a wrong one."""
    out: list[ExperimentRecord] = []
    for k in k_values:
        with _clock(out, timing):
            rng = make_rng(seed, "encrypt-demo", k)
            ok = 0
            errors = 0
            for _ in range(trials):
                key = Key.random(k, rng)
                msg = "".join(str(b) for b in rng.integers(0, 2, size=n))
                blocks = encrypt_message(msg, key, rng)
                ok += decrypt_message(blocks, key) == msg
                flip = int(rng.integers(0, k))
                wrong = Key(tuple(b ^ (j == flip) for j, b in enumerate(key.bits)))
                got = decrypt_message(blocks, wrong, rng)
                errors += sum(a != b for a, b in zip(got, msg))
            out.append(ExperimentRecord("encrypt-roundtrip", seed, ok / trials, 1.0, k=k, n=n, trials=trials))
            out.append(
                ExperimentRecord("encrypt-wrongkey-error-rate", seed, errors / (trials * n), 0.5, k=k, n=n, trials=trials)
            )
    return out


def distance(k_values, seed: int, timing: bool = False) -> list[ExperimentRecord]:
    out: list[ExperimentRecord] = []
    for k in k_values:
        with _clock(out, timing):
            d = trace_distance(rho_b_direct(0, k), rho_b_direct(1, k))
            out.append(ExperimentRecord("distance-rho", seed, d, analytic_distance(k), k=k))
    return out


def sigma_distance(k_values, seed: int, timing: bool = False) -> list[ExperimentRecord]:
    out: list[ExperimentRecord] = []
    for k in k_values:
        with _clock(out, timing):
            d = trace_distance(sigma_b(0, k), sigma_b(1, k))
            out.append(ExperimentRecord("distance-sigma", seed, d, analytic_sigma_distance(k), k=k))
    return out


def channel_check(k_values, seed: int, timing: bool = False) -> list[ExperimentRecord]:
    """Max entrywise error of U(sigma_b) against rho_b, and Kraus completeness."""
    out: list[ExperimentRecord] = []
    for k in k_values:
        with _clock(out, timing):
            for b in (0, 1):
                err = np.max(np.abs(hadamard_mixing_channel(sigma_b(b, k), k) - rho_b_direct(b, k)))
                out.append(ExperimentRecord(f"channel-sigma{b}", seed, float(err), 0.0, k=k))
            comp = kraus_completeness_error(hadamard_kraus_operators(k))
            out.append(ExperimentRecord("channel-kraus-completeness", seed, comp, 0.0, k=k))
    return out


def breidbart(k_values, seed: int, trials: int, timing: bool = False) -> list[ExperimentRecord]:
    out: list[ExperimentRecord] = []
    for k in k_values:
        with _clock(out, timing):
            beta, gamma = breidbart_distributions(k)
            worst = max(abs(beta[r] - gamma[r] - breidbart_prob_difference(r, k)) for r in beta)
            out.append(ExperimentRecord("breidbart-difference-max-error", seed, worst, 0.0, k=k))
            out.append(
                ExperimentRecord("breidbart-classical-distance", seed, breidbart_classical_distance(k), analytic_distance(k), k=k)
            )
            if trials:
                rng = make_rng(seed, "breidbart", k)
                labels = sample_measurement(rho_b_direct(0, k), breidbart_povm(k), rng, size=trials)
                zero = "0" * k
                freq = float(np.mean(labels == zero))
                out.append(ExperimentRecord("breidbart-mc-p0", seed, freq, beta[zero], k=k, trials=trials))
    return out


def scan(k_values, seed: int, resolution: int = 256, timing: bool = False) -> list[ExperimentRecord]:
    out: list[ExperimentRecord] = []
    for k in k_values:
        with _clock(out, timing):
            res = measurement_family_scan(k, angle_grid(resolution))
            out.append(ExperimentRecord("scan-best-distance", seed, res.best_distance, res.trace_distance, k=k, trials=resolution))
            out.append(ExperimentRecord("scan-best-angle", seed, res.best_angle, BREIDBART_ANGLE, k=k, trials=resolution))
    return out


def nosignal(seed: int, trials: int, povms: int = 100, timing: bool = False) -> list[ExperimentRecord]:
    out: list[ExperimentRecord] = []
    with _clock(out, timing):
        d = trace_distance(eve_marginal(0), eve_marginal(1))
        out.append(ExperimentRecord("nosignal-marginal-distance", seed, d, 0.0, k=1))
        rng = make_rng(seed, "nosignal", "povm")
        adv = max(signalling_advantage(random_qubit_povm(rng)) for _ in range(povms))
        out.append(ExperimentRecord("nosignal-max-advantage", seed, adv, 0.0, k=1, trials=povms))
        if trials:
            for b in (0, 1):
                mean, _ = empirical_eve_marginal(b, trials, make_rng(seed, "nosignal", "alice", b))
                dev = float(np.max(np.abs(mean - np.eye(2) / 2)))
                out.append(ExperimentRecord(f"nosignal-empirical-deviation-b{b}", seed, dev, 0.0, k=1, trials=trials))
    return out


def unicity(k_values, N: int, L: int, runs: int, seed: int, timing: bool = False) -> list[ExperimentRecord]:
    cfg = DetectorConfig(N, L)
    out: list[ExperimentRecord] = []
    for k in k_values:
        with _clock(out, timing):
            consumed = {}
            for scheme, budget in (
                ("probabilistic", probabilistic_budget(k, cfg)),
                ("deterministic", deterministic_budget(k, cfg)),
            ):
                reports = run_attacks(scheme, k, cfg, seed, runs)
                rate = sum(r.success for r in reports) / runs
                used = {r.qubits_consumed for r in reports}
                consumed[scheme] = max(used)
                common = dict(k=k, N=N, L=L, trials=runs)
                out.append(ExperimentRecord(f"unicity-{scheme}-success", seed, rate, 1.0, **common))
                out.append(ExperimentRecord(f"unicity-{scheme}-qubits", seed, max(used), budget, **common))
            ratio = consumed["probabilistic"] / consumed["deterministic"]
            out.append(ExperimentRecord("unicity-ratio", seed, ratio, 2**k / 2, k=k, N=N, L=L, trials=runs))
    return out


def complexity_grid() -> list[ComplexityProfile]:
    """20 profiles mixing unit, zero and non-unit costs."""
    grid = []
    for (n, k, l), ts in itertools.product(
        [(1, 1, 1), (2, 4, 2), (3, 8, 4), (5, 16, 3), (10, 32, 8)],
        [(1, 1, 1, 1), (0, 0, 0, 0), (2, 3, 5, 7), (1, 2, 1, 3)],
    ):
        grid.append(ComplexityProfile(*ts, n=n, k=k, l=l))
    return grid


def complexity(seed: int, timing: bool = False) -> list[ExperimentRecord]:
    out: list[ExperimentRecord] = []
    for p in complexity_grid():
        with _clock(out, timing):
            est = complexity_estimates(p)
            # closed forms written out again, independently of complexity_estimates
            ref_enc = p.n * (p.t1 + p.t3)
            ref_dec = p.n * (p.t2 + p.l * p.t4 / 2)
            ref_exh = 2**p.k * p.n * (p.t2 + p.l**p.n * p.t4)
            common = dict(k=p.k, n=p.n, l=p.l)
            out.append(ExperimentRecord("complexity-enc", seed, float(est.enc), ref_enc, **common))
            out.append(ExperimentRecord("complexity-dec", seed, float(est.dec), ref_dec, **common))
            out.append(ExperimentRecord("complexity-exhaustive", seed, float(est.exhaustive), ref_exh, **common))
    return out


def parse_k_range(text: str) -> list[int]:
    """``"1..6"`` or ``"2,4,6"`` (or a mix such as ``"1..3,8"``)."""
    values: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = (int(x) for x in part.split(".."))
            if lo > hi:
                raise ValueError(f"empty range {part!r}")
            values.extend(range(lo, hi + 1))
        elif part:
            values.append(int(part))
    if not values or any(v < 1 for v in values):
        raise ValueError(f"invalid k list {text!r}")
    return sorted(set(values))

