# lsl/commands/__init__.py
from lsl.commands.flow import flow
from lsl.commands.maslov import maslov
from lsl.commands.poset import poset
from lsl.commands.ring import ring
from lsl.commands.tunnel import tunnel
from lsl.commands.verify import verify

__all__ = ["poset", "ring", "flow", "tunnel", "maslov", "verify"]
