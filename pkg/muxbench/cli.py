"""
muxbench command line.

Every subcommand writes its result files under --out, echoes their paths on
stdout and logs to stderr.
"""
import sys
from typing import List, Optional

import click
import pydantic
import structlog

from muxbench import __version__
from muxbench.commands import bench, device, report, scaling, studies
from muxbench.config import settings
from muxbench.utils.error_handlers import (
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_VALIDATION,
    MuxBenchError,
    handle_cli_error,
)
from muxbench.utils.logger import bind_run, setup_logging

logger = structlog.get_logger()


@click.group()
@click.version_option(__version__, prog_name="muxbench")
@click.option(
    "--log-level", type=click.Choice(["debug", "info", "warning", "error"]), default=None,
    help="Log level (default MUXBENCH_LOG_LEVEL).",
)
@click.option("--debug", is_flag=True, help="Debug logging and tracebacks for unexpected errors.")
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str], debug: bool) -> None:
    """Compile circuits for multiplexed control hardware and benchmark the overhead."""
    ctx.ensure_object(dict)
    ctx.obj["debug"] = debug or settings.DEBUG
    setup_logging("debug" if debug else log_level)
    if ctx.invoked_subcommand:
        bind_run(ctx.invoked_subcommand)


cli.add_command(bench.bench_random)
cli.add_command(bench.bench_algo)
cli.add_command(studies.ratio)
cli.add_command(studies.optimize)
cli.add_command(scaling.toy)
cli.add_command(scaling.queue)
cli.add_command(report.fit)
cli.add_command(report.plot)
cli.add_command(device.couplers)
cli.add_command(device.serialize)
cli.add_command(device.export_spec)


def main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and map failures to exit codes."""
    debug = "--debug" in (argv if argv is not None else sys.argv[1:])
    try:
        rv = cli.main(args=argv, prog_name="muxbench", standalone_mode=False)
    except MuxBenchError as e:
        return handle_cli_error(e, debug=debug)
    except pydantic.ValidationError as e:
        logger.error("Invalid parameters", errors=e.errors(include_url=False))
        return EXIT_VALIDATION
    except click.UsageError as e:
        e.show()
        return EXIT_VALIDATION
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_INTERNAL
    except click.exceptions.Exit as e:
        return e.exit_code
    except Exception as e:  # noqa: BLE001
        return handle_cli_error(e, debug=debug)
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
