#pragma once

#include <string>

#include "frontlab/scenario.hpp"

namespace frontlab {

/// Writes the bundle under <outdir>/<scenario>/<stage>/..., one directory
/// per stage, plus summary.json embedding the resolved configuration.
/// Formats: any subset of "csv", "json", "svg" (comma-separated).
void emit_report(const ReportBundle& bundle, const std::string& outdir,
                 const std::string& formats = "csv,json,svg");

/// Deterministic JSON summary of a bundle (byte-identical across reruns of
/// the same configuration).
std::string summary_json(const ReportBundle& bundle);

void write_shape_json(const WulffShape& shape, const std::string& path);
void write_shape_svg(const WulffShape& shape, const std::string& path);
/// level-set overlay: measured boundary points over a target polygon
void write_overlay_svg(const std::vector<Vec2>& target, const std::vector<Vec2>& measured,
                       const std::string& path);

}  // namespace frontlab
