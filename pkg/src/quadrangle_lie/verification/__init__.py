"""Named verification suites, their reports and the frozen regression values."""
