"""Benchmark instances and experiment protocols."""
from .experiments import (ExperimentSpec, run_experiment, run_test1, run_test2, run_test3,
                          sweep_selector, time_to_optimal, write_csv)
from .generators import generate, generate_ferry, generate_gripper

__all__ = ["ExperimentSpec", "generate", "generate_ferry", "generate_gripper", "run_experiment",
           "run_test1", "run_test2", "run_test3", "sweep_selector", "time_to_optimal", "write_csv"]
