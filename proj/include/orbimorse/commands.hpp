#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "orbimorse/instance.hpp"
#include "orbimorse/intrinsic.hpp"
#include "orbimorse/report.hpp"

namespace orbimorse {

/// ORBIMORSE_CORPUS_DIR from the environment, else the bundled corpus.
std::filesystem::path default_corpus_dir();

/// The path itself when it exists; a bare file name is also looked up in the
/// corpus directory.
std::filesystem::path resolve_instance(const std::filesystem::path& path, const std::filesystem::path& corpus_dir);

Report cmd_validate(const std::filesystem::path& path);
Report cmd_homology(const std::filesystem::path& path, Convention convention);
Report cmd_derive(const std::filesystem::path& path, const std::filesystem::path& out);
Report cmd_compare(const std::filesystem::path& path);
Report cmd_corpus_list(const std::filesystem::path& corpus_dir);
Report cmd_corpus_run(const std::filesystem::path& corpus_dir, const std::optional<std::string>& filter);

/// The same commands on an already parsed instance.
Report validate_instance(const Instance& inst);
Report homology_instance(const Instance& inst, Convention convention);
Report compare_instance(const Instance& inst);

struct CheckOutcome {
    std::string check;
    bool ok = true;
    std::string detail;
};

/// Every consistency check that applies to the instance kind, plus the
/// author's expectations. Errors are caught and reported as failed checks.
std::vector<CheckOutcome> check_instance(const Instance& inst);

/// Corpus files in file-name order.
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& corpus_dir);

}  // namespace orbimorse
