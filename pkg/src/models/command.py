#!/usr/bin/env python3
"""
Command-related data models for the fink CLI.
"""

from datetime import datetime
from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field


class CommandName(str, Enum):
    """
    Subcommands of the fink CLI.
    """
    COUNT = "count"
    ENUMERATE = "enumerate"
    SOS_BUILD = "sos-build"
    SOS_CHECK = "sos-check"
    DECIDE = "decide"
    CANONIZE = "canonize"
    ESTIMATE_N = "estimate-n"
    NET = "net"


class CommandStatus(str, Enum):
    SUCCEEDED = "succeeded"
    NOT_FOUND = "not_found"
    FAILED = "failed"


class CommandResult(BaseModel):
    """
    Result of one command run; payload is what goes to stdout.
    """
    command: CommandName
    status: CommandStatus = CommandStatus.SUCCEEDED
    exit_code: int = 0
    payload: Dict[str, Any] = Field(default_factory=dict)
    elapsed: float = 0.0
    error: Optional[str] = None
    started_at: datetime = Field(default_factory=datetime.now)

    class Config:
        use_enum_values = True
