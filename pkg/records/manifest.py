from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from errors import UnknownConversationException
from records.base_record import BaseRecord


@dataclass(frozen=True)
class ManifestEntry(BaseRecord):
    """
    One conversation of the corpus

    Attributes:
        conversation_id         conversation name
        wav_path                audio location
        start_ms                start of the annotated range
        end_ms                  end of the annotated range
        reduction_path          reduction region file, optional
        function_path           function region file, optional
        second_function_path    second-pass function region file, optional
    """
    conversation_id: str
    wav_path: Path
    start_ms: float
    end_ms: float
    reduction_path: Optional[Path] = None
    function_path: Optional[Path] = None
    second_function_path: Optional[Path] = None

    def get_dict(self) -> dict:
        return {
            "conversation_id": self.conversation_id,
            "wav_path": str(self.wav_path),
            "annotated_start_ms": self.start_ms,
            "annotated_end_ms": self.end_ms,
            "reduction_path": str(self.reduction_path) if self.reduction_path else "",
            "function_path": str(self.function_path) if self.function_path else "",
            "second_function_path": str(self.second_function_path) if self.second_function_path else "",
        }


@dataclass(frozen=True)
class Manifest(BaseRecord):
    """
    Ordered list of corpus conversations

    Attributes:
        path        manifest location
        entries     entries sorted by conversation id
    """
    path: Path
    entries: List[ManifestEntry]

    @property
    def conversation_ids(self) -> List[str]:
        return [entry.conversation_id for entry in self.entries]

    def entry(self, conversation_id: str) -> ManifestEntry:
        for entry in self.entries:
            if entry.conversation_id == conversation_id:
                return entry
        raise UnknownConversationException(conversation_id)

    def get_dict(self) -> dict:
        return {"path": str(self.path), "conversations": self.conversation_ids}
