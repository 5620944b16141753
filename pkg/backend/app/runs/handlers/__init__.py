# One handler per subcommand
