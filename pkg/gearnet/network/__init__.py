"""Network assembly, checkpoints and layer transplant."""

from gearnet.network.checkpoint import (
    Checkpoint,
    load_checkpoint,
    read_checkpoint,
    read_tensor_file,
    save_checkpoint,
)
from gearnet.network.model import (
    Network,
    build_network,
    dump_feature_maps,
    evaluate_accuracy,
    forward,
    predict,
)
from gearnet.network.spec import ARCHITECTURES, NetworkSpec, get_spec
from gearnet.network.transfer import TransferPlan, transplant

__all__ = [
    "ARCHITECTURES",
    "Checkpoint",
    "Network",
    "NetworkSpec",
    "TransferPlan",
    "build_network",
    "dump_feature_maps",
    "evaluate_accuracy",
    "forward",
    "get_spec",
    "load_checkpoint",
    "predict",
    "read_checkpoint",
    "read_tensor_file",
    "save_checkpoint",
    "transplant",
]
