"""Quivers, seeds and their mutations; cluster-type detection."""

from sl3webs.cluster.quiver import Quiver, exchange_relation_at, mutate_quiver
from sl3webs.cluster.seeds import Seed, formal_seed, laurent_check, mutate_seed, mutation_closure
from sl3webs.cluster.types import ClusterTypeLabel, detect_type

__all__ = [
  "ClusterTypeLabel",
  "Quiver",
  "Seed",
  "detect_type",
  "exchange_relation_at",
  "formal_seed",
  "laurent_check",
  "mutate_quiver",
  "mutate_seed",
  "mutation_closure",
]
