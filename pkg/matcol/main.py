"""
matcol - low-rank matrix completion from non-uniformly sampled entries

Front door for every command:
    generate → observe → complete, plus incoherence diagnostics and experiments

Exit codes:
    0 success
    1 storage failure
    2 usage, configuration or parse error
    3 numerical failure (singular column system, degenerate input)
"""
import argparse
import logging
import sys
from typing import Optional, Sequence

import pydantic

from matcol import __version__
from matcol.cli import COMMANDS
from matcol.cli.common import RunContext
from matcol.core.config import Settings, get_settings
from matcol.core.exceptions import (
    MatcolException,
    NumericalError,
    SingularSystemError,
    StorageError,
    ValidationError,
)

logger = logging.getLogger(__name__)

EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matcol",
        description="Low-rank matrix completion from full columns plus sampled entries",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        type=str.upper,
        help="Override MATCOL_LOGGING__LEVEL",
    )
    parser.add_argument("--jobs", type=int, help="Worker pool size, -1 for all cores (env: MATCOL_JOBS)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def configure_logging(settings: Settings, level: Optional[str] = None) -> None:
    logging.basicConfig(
        level=getattr(logging, level or settings.logging.level),
        format=settings.logging.format,
        stream=sys.stderr,
        force=True,
    )


def _format_pydantic(exc: pydantic.ValidationError) -> list[str]:
    return [
        f"{'.'.join(str(part) for part in err['loc']) or '<root>'}: {err['msg']}"
        for err in exc.errors()
    ]


# ============================================================================
# EXCEPTION HANDLERS (most specific first)
# ============================================================================

def singular_system_handler(exc: SingularSystemError) -> int:
    logger.error(f"❌ {exc.message}: {exc.details}")
    logger.error("   rerun with --regularize to fall back to a Tikhonov-regularized solve")
    return exc.exit_code


def validation_error_handler(exc: ValidationError) -> int:
    logger.error(f"❌ {exc.message}" + (f": {exc.details}" if exc.details else ""))
    return exc.exit_code


def numerical_error_handler(exc: NumericalError) -> int:
    logger.error(f"❌ {exc.message}" + (f": {exc.details}" if exc.details else ""))
    return exc.exit_code


def storage_error_handler(exc: StorageError) -> int:
    logger.error(f"❌ {exc.message}" + (f": {exc.details}" if exc.details else ""), exc_info=True)
    return exc.exit_code


def matcol_exception_handler(exc: MatcolException) -> int:
    logger.error(f"❌ Unhandled matcol exception: {exc.message}", exc_info=True)
    return exc.exit_code


def pydantic_error_handler(exc: pydantic.ValidationError) -> int:
    problems = _format_pydantic(exc)
    logger.error(f"❌ {exc.title}: {len(problems)} validation error(s)")
    for problem in problems:
        logger.error(f"   {problem}")
    return EXIT_USAGE


def unexpected_error_handler(exc: Exception) -> int:
    logger.error(f"❌ Unexpected error: {exc}", exc_info=True)
    return 1


HANDLERS = (
    (SingularSystemError, singular_system_handler),
    (ValidationError, validation_error_handler),
    (NumericalError, numerical_error_handler),
    (StorageError, storage_error_handler),
    (MatcolException, matcol_exception_handler),
    (pydantic.ValidationError, pydantic_error_handler),
    (Exception, unexpected_error_handler),
)


def handle_exception(exc: Exception) -> int:
    for exc_type, handler in HANDLERS:
        if isinstance(exc, exc_type):
            return handler(exc)
    return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run one command and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 0

    try:
        settings = get_settings()
    except pydantic.ValidationError as e:
        logging.basicConfig(level=args.log_level or "INFO", stream=sys.stderr, force=True)
        return pydantic_error_handler(e)
    configure_logging(settings, args.log_level)

    if args.jobs is not None and (args.jobs == 0 or args.jobs < -1):
        parser.print_usage(sys.stderr)
        logger.error(f"❌ --jobs must be positive or -1, got {args.jobs}")
        return EXIT_USAGE
    jobs = args.jobs if args.jobs is not None else settings.harness.jobs

    logger.debug(f"matcol {__version__}: {args.command} (jobs={jobs})")
    try:
        return args.handler(args, RunContext(settings=settings, jobs=jobs))
    except Exception as e:
        return handle_exception(e)


if __name__ == "__main__":
    sys.exit(main())
