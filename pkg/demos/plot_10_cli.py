"""
The command line
================

Every operation is also a subcommand that prints a JSON envelope. This
script drives the CLI in-process.
"""

# %%
from cycloheights.cli import main

main(["height", "105", "--verify-oracle"])
main(["coeffs", "15", "--format", "csv", "--header"])
main(["witness", "3"])
main(["sparse", "count", "--x", "1000", "--trim"])
