"""Pixel containers, dataset/image file IO, and display scaling."""

from .cifar import (
    COARSE_LABEL_NAMES,
    FINE_LABEL_NAMES,
    RECORD_BYTES,
    MalformedCifarError,
    dump_cifar100_binary,
    load_cifar100_binary,
)
from .image import Dataset, ImageError, LabeledImage, check_image
from .io import (
    read_image,
    read_png,
    read_ppm,
    write_image,
    write_png,
    write_ppm,
)
from .resize import scale_linear

__all__ = [
    "COARSE_LABEL_NAMES",
    "FINE_LABEL_NAMES",
    "RECORD_BYTES",
    "Dataset",
    "ImageError",
    "LabeledImage",
    "MalformedCifarError",
    "check_image",
    "dump_cifar100_binary",
    "load_cifar100_binary",
    "read_image",
    "read_png",
    "read_ppm",
    "scale_linear",
    "write_image",
    "write_png",
    "write_ppm",
]
