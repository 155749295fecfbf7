"""Command-line interface for groupoid-flow."""

import sys
from typing import List, Optional

import click
import numpy as np

from src import __version__
from src.runner import GroupoidFlowRunner
from src.utils import console
from src.utils.config import Config
from src.utils.errors import ConfigError, GroupoidFlowError
from src.utils.report_writer import render_csv, write_report
from src.utils.run_config import load_run_config


def run_options(func):
    """Flags shared by every computing subcommand."""
    func = click.option('--verbose', '-v', is_flag=True, help='Progress output on stderr')(func)
    func = click.option('--tol', type=float, default=None, help='Newton tolerance override')(func)
    func = click.option('--seed', type=click.IntRange(0, 2 ** 64 - 1), default=0, show_default=True,
                        help='Seed for every random draw')(func)
    func = click.option('--out', '-o', type=click.Path(dir_okay=False), default=None,
                        help='Output CSV path (default: config output, else stdout)')(func)
    func = click.option('--config', 'config_path', required=True, type=click.Path(dir_okay=False),
                        help='YAML run configuration')(func)
    return func


def _run(subcommand: str, config_path: str, out: Optional[str], seed: int,
         tol: Optional[float], verbose: bool):
    Config.set_verbose(verbose)
    if not Config.validate():
        raise ConfigError("Environment settings must be strictly positive; check your .env file")

    run_config = load_run_config(config_path, subcommand)
    if tol is not None:
        if not tol > 0:
            raise ConfigError(f"--tol must be positive, got {tol}")
        run_config.tolerances['newton_tol'] = tol

    runner = GroupoidFlowRunner(Config.tolerances(), seed=seed)
    result = runner.run(run_config)

    output = out or run_config.output
    if result.text is not None:
        click.echo(result.text)
        if output:
            write_report(render_csv(subcommand, result.frame), output)
    else:
        write_report(render_csv(subcommand, result.frame), output)
    if output:
        console.success(f"Saved to: {output}")

    if result.failure is not None:
        raise result.failure


@click.group()
@click.version_option(version=__version__)
def cli():
    """
    groupoid-flow

    Implicit difference equations on Lie groupoids: constraint extraction,
    discrete Lagrangian and nonholonomic dynamics, linear DAE stepping.
    """
    pass


@cli.command('del')
@run_options
def del_command(config_path, out, seed, tol, verbose):
    """Discrete Euler-Lagrange trajectory of a Lagrangian."""
    _run('del', config_path, out, seed, tol, verbose)


@cli.command()
@run_options
def extract(config_path, out, seed, tol, verbose):
    """Constraint chain of an affine implicit equation."""
    _run('extract', config_path, out, seed, tol, verbose)


@cli.command()
@run_options
def classify(config_path, out, seed, tol, verbose):
    """Forward/backward depth of points of an implicit equation."""
    _run('classify', config_path, out, seed, tol, verbose)


@cli.command()
@run_options
def dae(config_path, out, seed, tol, verbose):
    """Constrained Euler integration of a linear DAE."""
    _run('dae', config_path, out, seed, tol, verbose)


@cli.command()
@run_options
def sleigh(config_path, out, seed, tol, verbose):
    """Nonholonomic trajectory of the discrete Chaplygin sleigh."""
    _run('sleigh', config_path, out, seed, tol, verbose)


@cli.command()
@run_options
def flow(config_path, out, seed, tol, verbose):
    """Lagrangian set generated by a Hamiltonian flow."""
    _run('flow', config_path, out, seed, tol, verbose)


@cli.command('show-config')
def show_config():
    """Show the effective tolerance policy and settings."""
    click.echo("\n🔧 Configuration Check\n")

    tol = Config.tolerances()
    click.echo(f"rank_rel_tol:    {tol.rank_rel_tol:g}")
    click.echo(f"newton_tol:      {tol.newton_tol:g}")
    click.echo(f"newton_max_iter: {tol.newton_max_iter}")
    click.echo(f"set_eq_tol:      {tol.set_eq_tol:g}")
    click.echo(f"\nClassification seeds: {Config.CLASSIFY_SEEDS} in [-{Config.SEED_BOX:g}, {Config.SEED_BOX:g}]")
    click.echo(f"Flow steps: {Config.FLOW_STEPS}")

    if Config.validate():
        click.echo("\n✅ Configuration is valid!")
    else:
        click.echo("\n⚠️  Some settings are not strictly positive.")
        click.echo("Please update your .env file. See .env.example for reference.")
        raise ConfigError("Invalid environment settings")


def dispatch(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and map outcomes to exit codes (0, 2, 3, 4)."""
    try:
        cli.main(args=argv, prog_name='groupoid-flow', standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return 2
    except click.Abort:
        console.error("Aborted")
        return 1
    except GroupoidFlowError as e:
        console.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except np.linalg.LinAlgError as e:
        # subclasses ValueError but is a numerical failure
        console.error(f"LinAlgError: {e}")
        return 3
    except ValueError as e:
        console.error(f"Invalid input: {e}")
        return 2
    return 0


if __name__ == '__main__':
    sys.exit(dispatch())
