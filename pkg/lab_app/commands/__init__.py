"""One service class per lab subcommand."""
