"""Command line interface for zenoprotect.

Why does this file exist, and why not put this in ``__main__``? You might be tempted to import things from ``__main__``
later, but that will cause problems--the code will get executed twice:

- When you run ``python3 -m zenoprotect`` python will execute``__main__.py`` as a script. That means there won't be any
  ``zenoprotect.__main__`` in ``sys.modules``.
- When you import __main__ it will get executed again (as a module) because
  there's no ``zenoprotect.__main__`` in ``sys.modules``.

.. seealso:: http://click.pocoo.org/5/setuptools/#setuptools-integration
"""
import logging
import os
import sys

import click
import numpy as np

from .version import __version__
from .setup import ConfigError
from .setup import emit_figures
from .setup import load_expectations
from .setup import load_scenario
from .setup import resolve_config
from .setup import run_scenario
from .setup import verify as verify_run
from .utils import setup_logging
from .zeno import delay_sweep
from .zeno import tau_g_ns

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG_ERROR = 2


def _config_error(e):
    click.echo("Configuration error: {0}".format(e), err=True)
    sys.exit(EXIT_CONFIG_ERROR)


def _parse_ints(text):
    """``1-13`` or ``1,2,5`` (or a mix) to a sorted list of ints."""
    values = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            start, stop = part.split("-", 1)
            values.update(range(int(start), int(stop) + 1))
        else:
            values.add(int(part))
    if not values:
        raise click.BadParameter("no values in {0!r}".format(text))
    return sorted(values)


@click.group()
@click.version_option(__version__)
@click.option('--verbose', '-v', count=True, help='Increase verbosity (can be used multiple times)')
@click.pass_context
def cli(ctx, verbose: int):
    """zenoprotect - protective measurement of polarization with SPGD stabilization."""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    log_level = max(logging.WARNING - verbose * 10, logging.DEBUG)
    setup_logging(log_level)


@cli.command()
@click.argument('scenario')
@click.option('--seed', type=int, default=None, help='Override the scenario seed')
@click.option('--out', 'output_dir', type=click.Path(file_okay=False), default=None,
              help='Output directory (default: runs/<scenario name>)')
@click.option('--full', is_flag=True, help='Run full-length durations')
@click.option('--workers', type=click.IntRange(min=1), default=1,
              help='Processes for the protective-measurement arms')
@click.option('--override', '-o', multiple=True, help='Override config parameters: -o section.param=value')
@click.pass_context
def run(ctx, scenario, seed, output_dir, full, workers, override):
    """Run a scenario file or bundled scenario name."""
    try:
        overrides = list(override)
        if seed is not None:
            overrides.append("seed={0}".format(seed))
        config = load_scenario(scenario, overrides)
    except ConfigError as e:
        _config_error(e)
    verbosity = min(2, 1 + ctx.obj.get("verbose", 0))
    manifest = run_scenario(config, output_dir, full=full, workers=workers,
                            verbosity=verbosity)
    out = output_dir or config.output_dir or os.path.join("runs", config.name)
    click.echo("Wrote {0} artifacts for {1!r} to {2}".format(
        len(manifest["artifacts"]), config.name, out))


@cli.command()
@click.argument('manifest', type=click.Path(exists=False))
@click.argument('expectations')
def verify(manifest, expectations):
    """Check a run directory (or manifest.json) against expectations."""
    try:
        expected = load_expectations(resolve_config(expectations, "expectations"))
    except ConfigError as e:
        _config_error(e)
    report = verify_run(manifest, expected)
    click.echo(report.format())
    sys.exit(EXIT_OK if report.passed else EXIT_VERIFY_FAILED)


@cli.command()
@click.option('--loops', default='1-13', help='Loop counts, e.g. 1-13 or 1,5,13')
@click.option('--theta', 'thetas', type=float, multiple=True,
              help='Polarization angle in rad (repeatable)')
@click.option('--phi', type=float, default=0.0, help='Relative phase in rad')
@click.option('--tau-loop-ns', type=float, default=0.483, help='DGD per loop')
@click.option('--pulse-fwhm-ns', type=float, default=2.5, help='Pulse intensity FWHM')
@click.option('--out', 'output_path', type=click.Path(dir_okay=False), default=None,
              help='CSV file (default: standard output)')
def sweep(loops, thetas, phi, tau_loop_ns, pulse_fwhm_ns, output_path):
    """Exact and weak-coupling pointer predictions over loops and angles."""
    if tau_loop_ns <= 0 or pulse_fwhm_ns <= 0:
        _config_error("tau-loop-ns and pulse-fwhm-ns must be positive")
    if not thetas:
        thetas = tuple(np.linspace(0, np.pi / 2, 5))
    tau_tilde = tau_loop_ns / tau_g_ns(pulse_fwhm_ns)
    frame = delay_sweep(tau_tilde, _parse_ints(loops), thetas, phi)
    frame.insert(0, "tau_tilde", tau_tilde)
    if output_path:
        frame.to_csv(output_path, index=False, float_format="%.10g")
        click.echo("Wrote {0} rows to {1}".format(len(frame), output_path))
    else:
        click.echo(frame.to_csv(index=False, float_format="%.10g"), nl=False)


@cli.command('emit-plots')
@click.argument('run_dir', type=click.Path(exists=True, file_okay=False))
@click.option('--render', is_flag=True, help='Also draw SVG figures')
def emit_plots(run_dir, render):
    """Write figure tables for a finished run."""
    written = emit_figures(run_dir, render=render)
    for path in written:
        click.echo(path)


@cli.command()
@click.argument('scenario')
@click.option('--override', '-o', multiple=True, help='Override config parameters: -o section.param=value')
def validate(scenario, override):
    """Validate a scenario without running it."""
    try:
        config = load_scenario(scenario, override)
    except ConfigError as e:
        _config_error(e)
    click.echo("Configuration valid: {0} ({1} loops, {2} PM arms, "
               "stabilization arms: {3})".format(
                   config.name, config.plant.loops, len(config.zeno.thetas),
                   ", ".join(config.stabilization.arms) or "none"))


# Alias for entry point
main = cli

__all__ = ['cli', 'main']


if __name__ == "__main__":
    cli()
