"""
Graph model factory to handle the supported random graph models
"""
import logging
from enum import Enum
from typing import Callable, Optional, Union

from regular_loops.config import Budgets
from regular_loops.errors import InvalidConfig
from regular_loops.graphs.multigraph import Multigraph
from regular_loops.graphs.sampler import RandomSource, sample_configuration, sample_uniform_simple

logger = logging.getLogger(__name__)

Sampler = Callable[[int, int, RandomSource], Multigraph]


class GraphModel(str, Enum):
    """Random regular graph models"""
    CONFIGURATION = "configuration"
    UNIFORM_SIMPLE = "uniform-simple"

    @classmethod
    def parse(cls, value: Union[str, "GraphModel"]) -> "GraphModel":
        if isinstance(value, GraphModel):
            return value
        normalized = str(value).strip().lower().replace("_", "-")
        for model in cls:
            if model.value == normalized:
                return model
        raise InvalidConfig(f"Unsupported graph model: {value!r} (expected one of {[m.value for m in cls]})")


class GraphModelFactory:
    """Factory class to create samplers based on the configured model"""

    @staticmethod
    def create_sampler(model: Union[str, GraphModel], budgets: Optional[Budgets] = None) -> Sampler:
        """
        Create a sampler (d, n, rng) -> Multigraph for the given model
        """
        budgets = budgets or Budgets.from_env()
        selected = GraphModel.parse(model)

        if selected is GraphModel.CONFIGURATION:
            return GraphModelFactory._create_configuration()
        elif selected is GraphModel.UNIFORM_SIMPLE:
            return GraphModelFactory._create_uniform_simple(budgets.rejection)
        else:
            raise InvalidConfig(f"Unsupported graph model: {model}")

    @staticmethod
    def _create_configuration() -> Sampler:
        """Configuration model G(d, n)"""
        return sample_configuration

    @staticmethod
    def _create_uniform_simple(max_attempts: int) -> Sampler:
        """Uniform simple model by rejection from G(d, n)"""

        def sample(d: int, n: int, rng: RandomSource) -> Multigraph:
            return sample_uniform_simple(d, n, rng, max_attempts=max_attempts)

        logger.debug(f"Uniform-simple sampler with rejection budget {max_attempts}")
        return sample
