from typing import Any, Dict, List, Union

HermlabCheck = Dict[str, Any]
HermlabCheckItem = Dict[str, Union[str, List[HermlabCheck]]]
HermlabCheckDocument = Dict[str, Union[str, List[HermlabCheckItem]]]

HermlabModelDocument = Dict[str, Any]
