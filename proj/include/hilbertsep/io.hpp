#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hilbertsep/common.hpp"
#include "hilbertsep/embed.hpp"
#include "hilbertsep/geometry.hpp"
#include "hilbertsep/svm.hpp"

namespace hilbertsep::io {

/// Unreadable, unparseable, or schema-violating domain file.
struct DomainFileError : Error {
    using Error::Error;
};

/// Reads {"dimension": d, "hyperplanes": [{"w": [...], "c": ...}, ...]} and
/// runs full domain validation on the rows.
Domain load_domain(const std::string& path);
void save_domain(const Domain& dom, const std::string& path);

/// Comma-separated points file: a header line, coordinate columns, and an
/// optional trailing "label" column (case-insensitive). Labels +1/1 map to
/// +1 and -1/0 to -1. The verbatim data lines are kept so prediction output
/// can echo them unchanged.
struct PointsFile {
    std::vector<Vec> points;
    std::vector<int> labels;  // empty unless has_labels
    bool has_labels = false;
    std::string header;
    std::vector<std::string> raw_lines;  // one per parsed point
};

PointsFile load_points_csv(const std::string& path);

SeparatorModel load_model(const std::string& path);
void save_model(const SeparatorModel& model, const std::string& path);

/// The classifier file embeds the domain it was trained on, so prediction
/// needs no separate domain argument.
std::pair<NnModel, Domain> load_nn_model(const std::string& path);
void save_nn_model(const NnModel& model, const Domain& dom, const std::string& path);

}  // namespace hilbertsep::io
