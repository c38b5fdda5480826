"""pytest setup for the absltest-based test files."""

from absl import flags


def pytest_configure(config):
  del config
  # absltest.main() parses flags; under pytest the defaults must be enough.
  flags.FLAGS.mark_as_parsed()
