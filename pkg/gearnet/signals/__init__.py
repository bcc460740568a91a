"""Vibration signal pipeline: order tracking, image encoding and dataset splits."""

from gearnet.signals.encode import encode_image
from gearnet.signals.pipeline import build_image_dataset
from gearnet.signals.records import (
    AngleRecord,
    ImageSample,
    TimeRecord,
    read_manifest,
    read_time_record,
    write_manifest,
    write_time_record,
)
from gearnet.signals.resample import angle_resample, decimate, order_spectrum, time_spectrum
from gearnet.signals.split import DatasetSplit, split_dataset

__all__ = [
    "AngleRecord",
    "DatasetSplit",
    "ImageSample",
    "TimeRecord",
    "angle_resample",
    "build_image_dataset",
    "decimate",
    "encode_image",
    "order_spectrum",
    "read_manifest",
    "read_time_record",
    "split_dataset",
    "time_spectrum",
    "write_manifest",
    "write_time_record",
]
