// Standalone SVG arc diagrams of windows, cluster traces and meanders:
// sites on a baseline, upper arcs above it, lower arcs below, dangling
// ends drawn as rays leaving the window.
#pragma once

#include <arcline/core.hpp>
#include <arcline/errors.hpp>
#include <arcline/lazyline.hpp>
#include <arcline/meander.hpp>
#include <arcline/types.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace arcline {

enum class ArcShape { semicircle, tent };

struct RenderStyle {
    double site_spacing = 16.0;
    ArcShape arc_shape = ArcShape::semicircle;
    std::optional<Site> highlight_origin;  // cluster through this site drawn emphasised
    bool show_ends = true;
    std::uint64_t max_sites = 20000;
};

// Deterministic standalone SVG text.  Every arc and every drawn end is
// one <path> element; upper geometry stays strictly above the baseline,
// lower strictly below.  Throws SubjectTooLarge over style.max_sites.
std::string render_svg(const Window& w, const RenderStyle& style = {});
std::string render_svg(const ClusterTrace& t, const RenderStyle& style = {});
std::string render_svg(const MeanderDiagram& m, const RenderStyle& style = {});

}  // namespace arcline
