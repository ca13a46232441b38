"""Error norms, audits and operator algebra."""
