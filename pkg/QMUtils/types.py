from typing import Any, Dict, Sequence, Union

import numpy as np


SimpleJson = Dict[str, Any]
RealOrArray = Union[float, np.ndarray]
RealSequence = Union[Sequence[float], np.ndarray]
