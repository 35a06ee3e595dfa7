"""Differential entropy of Q-tables as a stopping signal for tabular Q-learning."""

from ._core import (
    Config,
    ConfigError,
    IoError,
    UsageError,
    boltzmann_probabilities,
    channel_count,
    channel_entropies,
    encode_channel,
    flag_zone,
    full_workflow,
    histogram_entropy,
    replay_to,
    run_tests,
    setup_names,
    stopping_points,
    train_run,
    welch_t_test,
)

__all__ = [
    "Config",
    "ConfigError",
    "IoError",
    "UsageError",
    "boltzmann_probabilities",
    "channel_count",
    "channel_entropies",
    "encode_channel",
    "flag_zone",
    "full_workflow",
    "histogram_entropy",
    "replay_to",
    "run_tests",
    "setup_names",
    "stopping_points",
    "train_run",
    "welch_t_test",
]
