"""
Instance registry.

Names: ``vectq``, ``fgab``, ``pairvect``, ``product:<a>:<b>`` and ``op:<name>``;
components nest, as in ``product:op:vectq:product:fgab:pairvect``.
"""
import logging
from typing import Callable, Dict

from src.category.errors import UnknownInstanceError
from src.category.instance import CategoryInstance
from src.instances.fgab import FgAbInstance
from src.instances.opposite import OppositeInstance
from src.instances.pairvect import PairVectInstance
from src.instances.product import ProductInstance
from src.instances.vectq import VectQInstance

logger = logging.getLogger(__name__)

BASE_INSTANCES: Dict[str, Callable[[], CategoryInstance]] = {
    "vectq": VectQInstance,
    "fgab": FgAbInstance,
    "pairvect": PairVectInstance,
}


def _product(name: str, rest: str) -> ProductInstance:
    """
    Split ``rest`` into two instance names. Component names may contain
    colons themselves (op:vectq, product:a:b), so every separator is tried
    from the left and the first split where both halves resolve wins.
    """
    for i, char in enumerate(rest):
        if char != ":":
            continue
        try:
            return ProductInstance(get_instance(rest[:i]), get_instance(rest[i + 1:]))
        except UnknownInstanceError:
            continue
    raise UnknownInstanceError(f"products are named product:<a>:<b>, got {name!r}")


def get_instance(name: str) -> CategoryInstance:
    """Resolve an instance name, building products and opposites from their parts."""
    if name in BASE_INSTANCES:
        return BASE_INSTANCES[name]()
    if name.startswith("op:"):
        return OppositeInstance(get_instance(name[len("op:"):]))
    if name.startswith("product:"):
        return _product(name, name[len("product:"):])
    raise UnknownInstanceError(f"unknown instance {name!r}; expected one of {sorted(BASE_INSTANCES)} or product:<a>:<b>")
