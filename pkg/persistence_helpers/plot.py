# Copyright 2024, persistence-erosion contributors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""SVG rendering of landscapes. Floats appear only here, for drawing."""
from pathlib import Path
from typing import Tuple, Union

import matplotlib

matplotlib.use("Agg")
from matplotlib import pyplot as plt  # noqa: E402

from ovos_utils.log import LOG  # noqa: E402

from .landscape import LandscapeSequence  # noqa: E402

POINTS_PER_INCH = 72


def render_landscape_svg(landscape: LandscapeSequence, path: Union[str, Path],
                         size: Tuple[int, int] = (800, 400)):
    """Write one polyline per curve, coloured by depth, to an SVG file.

    Output is reproducible: the SVG id salt is fixed and no date is embedded.
    """
    width, height = size
    cmap = matplotlib.colormaps["viridis"]
    with plt.rc_context({"svg.hashsalt": "persistence-erosion", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(width / POINTS_PER_INCH, height / POINTS_PER_INCH))
        depth = landscape.depth
        for k, curve in enumerate(landscape.curves, start=1):
            ts = [float(t) for t, _ in curve.breakpoints]
            hs = [float(h) for _, h in curve.breakpoints]
            color = cmap((k - 1) / max(depth - 1, 1))
            ax.plot(ts, hs, color=color, linewidth=1.5, label=f"k = {k}")
        ax.set_xlabel("t")
        ax.set_ylabel("height")
        ax.set_ylim(bottom=0)
        if depth:
            ax.legend(loc="upper right", fontsize="small")
        fig.savefig(str(path), format="svg", metadata={"Date": None})
        plt.close(fig)
    LOG.info(f"wrote {depth} curves to {path}")
