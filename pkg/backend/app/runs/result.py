from dataclasses import dataclass, field
from typing import Dict, List


@dataclass
class RunResult:
    """What a run hands back to the CLI: stdout text, files to write, stderr notes"""

    text: str = ""
    exit_code: int = 0
    artifacts: Dict[str, str] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
