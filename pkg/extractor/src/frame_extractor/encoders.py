"""Per-frame image encoders.

Every encoder maps a batch of uint8 RGB frames (B, H, W, 3) to one
float32 vector per frame.  ``mean_pool`` is a dependency-free grid
pooling encoder used for tests and plumbing checks; the pretrained
encoders (``swav_resnet50``, ``resnet50``) load torch models lazily and
need the weights to be downloadable or already cached.
"""

from __future__ import annotations

import numpy as np

import cv2


class EncoderError(Exception):
    pass


class MeanPoolEncoder:
    """Average-pool each frame to a grid x grid x 3 patch and flatten.

    Deterministic and weight-free; adequate wherever only the shape,
    ordering and file contracts of the pipeline are under test.
    """

    def __init__(self, grid: int = 8):
        self.grid = grid
        self.identifier = f"mean_pool{grid}"
        self.dim = grid * grid * 3
        self.preprocess_recipe = {
            "pooling": "area",
            "grid": grid,
            "scale": "1/255",
        }

    def encode(self, frames: np.ndarray) -> np.ndarray:
        out = np.empty((frames.shape[0], self.dim), dtype=np.float32)
        for i, frame in enumerate(frames):
            pooled = cv2.resize(
                frame, (self.grid, self.grid), interpolation=cv2.INTER_AREA
            )
            out[i] = pooled.astype(np.float32).ravel() / 255.0
        return out


class _TorchEncoder:
    """Shared plumbing for torchvision/torch-hub backbones."""

    identifier = ""
    dim = 2048

    def __init__(self):
        try:
            import torch  # noqa: F401
        except ImportError as exc:
            raise EncoderError(
                f"{self.identifier} needs torch + torchvision installed"
            ) from exc
        self._model = None
        # standard ImageNet recipe
        self._mean = np.array([0.485, 0.456, 0.406], dtype=np.float32)
        self._std = np.array([0.229, 0.224, 0.225], dtype=np.float32)
        self.preprocess_recipe = {
            "scale": "1/255",
            "normalize_mean": self._mean.tolist(),
            "normalize_std": self._std.tolist(),
        }

    def _load(self):
        raise NotImplementedError

    def encode(self, frames: np.ndarray) -> np.ndarray:
        import torch

        if self._model is None:
            self._model = self._load()
            self._model.eval()
        arr = frames.astype(np.float32) / 255.0
        arr = (arr - self._mean) / self._std
        batch = torch.from_numpy(arr.transpose(0, 3, 1, 2))
        with torch.no_grad():
            feats = self._model(batch)
        return feats.reshape(feats.shape[0], -1).cpu().numpy().astype(np.float32)


class SwavResnet50Encoder(_TorchEncoder):
    """Self-supervised SwAV ResNet-50 backbone (2048-d, torch hub)."""

    identifier = "swav_resnet50"

    def _load(self):
        import torch

        model = torch.hub.load("facebookresearch/swav:main", "resnet50")
        model.fc = torch.nn.Identity()
        return model


class Resnet50Encoder(_TorchEncoder):
    """Supervised ImageNet ResNet-50 penultimate features (2048-d)."""

    identifier = "resnet50"

    def _load(self):
        import torch
        from torchvision import models

        model = models.resnet50(weights=models.ResNet50_Weights.IMAGENET1K_V2)
        model.fc = torch.nn.Identity()
        return model


_FACTORIES = {
    "mean_pool": lambda: MeanPoolEncoder(),
    "swav_resnet50": SwavResnet50Encoder,
    "resnet50": Resnet50Encoder,
}


def load_encoder(identifier: str):
    if identifier not in _FACTORIES:
        raise EncoderError(
            f"unknown encoder {identifier!r}; known: {sorted(_FACTORIES)}"
        )
    return _FACTORIES[identifier]()
