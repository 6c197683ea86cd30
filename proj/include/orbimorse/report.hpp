#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "orbimorse/chaincx.hpp"
#include "orbimorse/error.hpp"

namespace orbimorse {

enum class Status {
    Ok,        // exit 0
    Invalid,   // exit 2: the input fails validation
    Mismatch,  // exit 3: a theorem check or expectation failed
    IoError,   // exit 4: unreadable or unparsable input
};

std::string_view to_string(Status s);
int exit_code(Status s);
Status status_for(ErrorCode code);

struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    std::string command;
    std::string instance;
    Status status = Status::Ok;
    std::vector<std::string> notes;
    std::vector<Table> tables;

    /// Lowers the status to s if s is worse.
    void degrade(Status s);
};

/// Aligned plain text. Deterministic for a given report.
std::string render_text(const Report& r);
/// Every line starts with the table name; header rows included. The report
/// metadata appears first under the name "report".
std::string render_csv(const Report& r);

/// One row per target generator, one column per source generator.
Table matrix_table(std::string name, const RationalMatrix& m, const std::vector<std::string>& row_labels,
                   const std::vector<std::string>& col_labels);
Table betti_table(const std::vector<std::size_t>& betti);

}  // namespace orbimorse
