from ._aspectminer import (
    AspectMinerError,
    concepts,
    dynamic_seeds,
    fanin,
    generate,
    porter_stem,
    seed_quality,
    split_identifier,
)

__all__ = [
    "AspectMinerError",
    "concepts",
    "dynamic_seeds",
    "fanin",
    "generate",
    "porter_stem",
    "seed_quality",
    "split_identifier",
]
