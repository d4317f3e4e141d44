"""Command line entry point: embedded runs, OSC listening, log replay.

Every flag has a config-file equivalent (TOML, underscored key of the
long flag name); precedence is flags over file over defaults. Exit codes:
0 success, 2 usage error, 3 runtime failure.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import click
import tomli

from .analysis import spectrogram, spectrogram_to_csv
from .control import ControlServer
from .engine import LiveSession, SessionPump, render_run
from .events import RunEventLog
from .harness import run_algorithm
from .osc import DEFAULT_PORT, OscServer
from .params import EngineParams
from .problems import PROBLEMS
from .wavefile import write_wav

SPECTROGRAM_WINDOW = 4096
SPECTROGRAM_HOP = 1024

# long flag name -> EngineParams field
_PARAM_FIELDS = {
    "scaling": "sample_value_scaling",
    "osc_freq": "oscillator_hz",
    "fund_freq": "fundamental_hz",
    "gain1": "gain_p1",
    "gain2": "gain_p2",
    "sr": "sample_rate_hz",
    "spg": "seconds_per_generation",
    "recurrence_keep": "recurrence_keep",
}


def _common_options(fn):
    options = [
        click.option("--scaling", type=float, default=None, help="Sample value scaling for the shape voice."),
        click.option("--osc-freq", type=float, default=None, help="Wavetable oscillator frequency [Hz]."),
        click.option("--fund-freq", type=float, default=None, help="Fundamental of the recurrence voice [Hz]."),
        click.option("--gain1", type=float, default=None, help="Output gain of the shape voice."),
        click.option("--gain2", type=float, default=None, help="Output gain of the recurrence voice."),
        click.option("--sr", type=float, default=None, help="Sample rate [Hz]."),
        click.option("--spg", type=float, default=None, help="Seconds of audio per generation."),
        click.option("--recurrence-keep", type=float, default=None, help="Fraction of recurrent values passed through (1.0 = all)."),
        click.option("--control-port", type=int, default=None, help="Serve the control WebSocket on this port."),
        click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None, help="TOML config file; flags override its values."),
    ]
    for opt in reversed(options):
        fn = opt(fn)
    return fn


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    p = Path(path)
    if not p.exists():
        raise click.UsageError(f"config file not found: {path}")
    try:
        return tomli.loads(p.read_text(encoding="utf-8"))
    except tomli.TOMLDecodeError as exc:
        raise click.UsageError(f"bad config file {path}: {exc}") from exc


def _pick(flags: dict, config: dict, name: str, default=None):
    value = flags.get(name)
    if value is not None:
        return value
    return config.get(name, default)


def _build_params(flags: dict, config: dict, base: EngineParams | None = None) -> EngineParams:
    params = base or EngineParams()
    data = params.as_dict()
    for flag, field in _PARAM_FIELDS.items():
        value = _pick(flags, config, flag)
        if value is not None:
            data[field] = value
    return EngineParams.from_dict(data).validate()


def _write_outputs(result, run_log, params, out, snapshots, spectrogram_path, report_dir, wav_format) -> None:
    if out:
        write_wav(out, result.mixed, result.sample_rate_hz, fmt=wav_format)
        click.echo(f"wrote {out} ({result.mixed.shape[0]} frames at {result.sample_rate_hz:.0f} Hz)")
    if snapshots:
        payload = {
            "problem": run_log.problem,
            "algorithm": run_log.algorithm,
            "seed": run_log.seed,
            "params": params.as_dict(),
            "generations": [snap.as_dict() for snap in result.snapshots],
        }
        Path(snapshots).write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")
        click.echo(f"wrote {snapshots}")
    if spectrogram_path:
        mags = spectrogram(result.path1, SPECTROGRAM_WINDOW, SPECTROGRAM_HOP)
        spectrogram_to_csv(mags, spectrogram_path)
        click.echo(f"wrote {spectrogram_path}")
    if report_dir:
        from .report import write_report

        for path in write_report(result, run_log, report_dir):
            click.echo(f"wrote {path}")


@click.group()
def cli():
    """Sonify bi-objective optimizer runs through two synthesis paths."""


@cli.command()
@click.option("--problem", type=str, default=None, help=f"One of {sorted(PROBLEMS)}.")
@click.option("--algo", type=str, default=None, help="nsga2 or moead.")
@click.option("--gens", type=int, default=None, help="Number of generations to run.")
@click.option("--seed", type=int, default=None, help="Random seed.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output WAV path.")
@click.option("--log", "log_path", type=click.Path(dir_okay=False), default=None, help="Write the replayable event log here.")
@click.option("--snapshots", type=click.Path(dir_okay=False), default=None, help="Write per-generation state snapshots (JSON).")
@click.option("--spectrogram", "spectrogram_path", type=click.Path(dir_okay=False), default=None, help="Write the shape-voice spectrogram (CSV).")
@click.option("--report-dir", type=click.Path(file_okay=False), default=None, help="Render report figures into this directory.")
@click.option("--wav-format", type=click.Choice(["pcm16", "float32"]), default=None)
@_common_options
def run(problem, algo, gens, seed, out, log_path, snapshots, spectrogram_path, report_dir, wav_format, config_path, **flags):
    """Run an embedded optimizer and render its sonification offline."""
    config = _load_config(config_path)
    problem = _pick({"problem": problem}, config, "problem", "zdt1")
    algo = _pick({"algo": algo}, config, "algo", "nsga2")
    gens = int(_pick({"gens": gens}, config, "gens", 250))
    seed = int(_pick({"seed": seed}, config, "seed", 0))
    out = _pick({"out": out}, config, "out")
    log_path = _pick({"log": log_path}, config, "log")
    snapshots = _pick({"snapshots": snapshots}, config, "snapshots")
    spectrogram_path = _pick({"spectrogram": spectrogram_path}, config, "spectrogram")
    report_dir = _pick({"report_dir": report_dir}, config, "report_dir")
    wav_format = _pick({"wav_format": wav_format}, config, "wav_format", "pcm16")
    if problem not in PROBLEMS:
        raise click.UsageError(f"unknown problem {problem!r}; choose from {sorted(PROBLEMS)}")
    if algo not in ("nsga2", "moead"):
        raise click.UsageError(f"unknown algorithm {algo!r}; choose nsga2 or moead")

    params = _build_params(flags, config)
    params = EngineParams.from_dict({**params.as_dict(), "throttle_seed": seed})
    click.echo(f"running {algo} on {problem}: {gens} generations, seed {seed}")
    run_log = run_algorithm(problem, algo, gens, seed, params=params)
    if log_path:
        run_log.save(log_path)
        click.echo(f"wrote {log_path}")
    # The harness may have grown capacity fields (MOEA/D fronts hold up to
    # 101 points); the log's params are the ones the render must use.
    result = render_run(run_log)
    _write_outputs(result, run_log, run_log.params, out, snapshots, spectrogram_path, report_dir, wav_format)


@cli.command()
@click.option("--log", "log_path", type=click.Path(dir_okay=False), default=None, help="Event log to replay (required).")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output WAV path.")
@click.option("--snapshots", type=click.Path(dir_okay=False), default=None)
@click.option("--spectrogram", "spectrogram_path", type=click.Path(dir_okay=False), default=None)
@click.option("--report-dir", type=click.Path(file_okay=False), default=None)
@click.option("--wav-format", type=click.Choice(["pcm16", "float32"]), default=None)
@_common_options
def replay(log_path, out, snapshots, spectrogram_path, report_dir, wav_format, config_path, **flags):
    """Re-render a recorded event log, bit-identical to the original run."""
    config = _load_config(config_path)
    log_path = _pick({"log": log_path}, config, "log")
    if not log_path:
        raise click.UsageError("replay requires --log")
    out = _pick({"out": out}, config, "out")
    snapshots = _pick({"snapshots": snapshots}, config, "snapshots")
    spectrogram_path = _pick({"spectrogram": spectrogram_path}, config, "spectrogram")
    report_dir = _pick({"report_dir": report_dir}, config, "report_dir")
    wav_format = _pick({"wav_format": wav_format}, config, "wav_format", "pcm16")

    run_log = RunEventLog.load(log_path)
    params = _build_params(flags, config, base=run_log.params)
    result = render_run(run_log, params)
    _write_outputs(result, run_log, params, out, snapshots, spectrogram_path, report_dir, wav_format)


@cli.command()
@click.option("--port", type=int, default=None, help=f"UDP port for OSC ingestion (default {DEFAULT_PORT}).")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write captured audio here on exit.")
@click.option("--max-gens", type=int, default=None, help="Stop after this many generations have been received.")
@click.option("--duration", type=float, default=None, help="Stop after this many seconds regardless of input.")
@click.option("--wav-format", type=click.Choice(["pcm16", "float32"]), default=None)
@_common_options
def listen(port, out, max_gens, duration, wav_format, config_path, **flags):
    """Listen for fronts from an external optimizer over OSC."""
    config = _load_config(config_path)
    port = int(_pick({"port": port}, config, "port", DEFAULT_PORT))
    out = _pick({"out": out}, config, "out")
    max_gens = _pick({"max_gens": max_gens}, config, "max_gens")
    duration = _pick({"duration": duration}, config, "duration")
    wav_format = _pick({"wav_format": wav_format}, config, "wav_format", "pcm16")
    control_port = _pick(flags, config, "control_port")

    params = _build_params(flags, config)
    session = LiveSession(params)
    server = OscServer(session, port=port)
    stop_after = None if max_gens is None else int(max_gens) - 1
    pump = SessionPump(session, stop_after_generation=stop_after)
    control = None
    if control_port is not None:
        control = ControlServer(session, port=int(control_port))
        control.start()
        click.echo(f"control endpoint on ws://127.0.0.1:{control.port}")
    server.start()
    pump.start()
    click.echo(f"listening on udp://{server.host}:{server.port}", nl=True)
    sys.stdout.flush()
    started = time.monotonic()
    try:
        while pump.running:
            time.sleep(0.05)
            if duration is not None and time.monotonic() - started > duration:
                break
    except KeyboardInterrupt:
        pass
    finally:
        pump.stop()
        pump.join(timeout=2.0)
        server.stop()
        if control is not None:
            control.stop()
    audio = pump.audio()
    gens_seen = session.engine.generation_index + 1
    click.echo(f"received {gens_seen} generations, rendered {audio.shape[0]} frames")
    if out and audio.shape[0]:
        write_wav(out, audio, session.engine.params.sample_rate_hz, fmt=wav_format)
        click.echo(f"wrote {out}")


def main(argv=None) -> None:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.UsageError as exc:
        exc.show()
        sys.exit(2)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except KeyboardInterrupt:
        sys.exit(130)
    except Exception as exc:  # runtime failures map to exit code 3
        click.echo(f"error: {exc}", err=True)
        sys.exit(3)


if __name__ == "__main__":
    main()
