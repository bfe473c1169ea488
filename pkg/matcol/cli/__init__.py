"""
CLI Commands - one module per subcommand

Each module exposes register(subparsers) which adds its parser and sets
`handler` to a function taking (args, context) and returning an exit code:
- generate: synthetic matrices
- observe: observation sets from a matrix
- complete: run the completion algorithm
- incoherence: coherence diagnostics
- experiment: exact-recovery sweep and Nystrom comparison
- schemas: JSON Schemas of the file formats
"""
from . import complete, experiment, generate, incoherence, observe, schemas

COMMANDS = (generate, observe, complete, incoherence, experiment, schemas)
