# Subcommand runs
