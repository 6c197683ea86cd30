#include "orbimorse/report.hpp"

#include <algorithm>
#include <sstream>

namespace orbimorse {

std::string_view to_string(Status s) {
    switch (s) {
        case Status::Ok: return "ok";
        case Status::Invalid: return "invalid";
        case Status::Mismatch: return "mismatch";
        case Status::IoError: return "error";
    }
    return "error";
}

int exit_code(Status s) {
    switch (s) {
        case Status::Ok: return 0;
        case Status::Invalid: return 2;
        case Status::Mismatch: return 3;
        case Status::IoError: return 4;
    }
    return 4;
}

Status status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::IoError: return Status::IoError;
        case ErrorCode::NotAComplex:
        case ErrorCode::CancellationFailure:
        case ErrorCode::InvarianceFailure:
        case ErrorCode::GaugeFailure:
        case ErrorCode::InternalError: return Status::Mismatch;
        default: return Status::Invalid;
    }
}

void Report::degrade(Status s) {
    if (exit_code(s) > exit_code(status)) status = s;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void csv_line(std::ostringstream& out, const std::string& table, const std::vector<std::string>& fields) {
    out << csv_field(table);
    for (const auto& f : fields) out << ',' << csv_field(f);
    out << '\n';
}

}  // namespace

std::string render_text(const Report& r) {
    std::ostringstream out;
    out << "command: " << r.command << '\n';
    out << "instance: " << r.instance << '\n';
    out << "status: " << to_string(r.status) << '\n';
    for (const auto& n : r.notes) out << "note: " << n << '\n';
    for (const auto& t : r.tables) {
        out << '\n' << '[' << t.name << "]\n";
        std::vector<std::size_t> width(t.header.size(), 0);
        auto measure = [&](const std::vector<std::string>& row) {
            if (row.size() > width.size()) width.resize(row.size(), 0);
            for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
        };
        measure(t.header);
        for (const auto& row : t.rows) measure(row);
        auto line = [&](const std::vector<std::string>& row) {
            std::string s;
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) s += "  ";
                s += row[i];
                if (i + 1 < row.size()) s += std::string(width[i] - row[i].size(), ' ');
            }
            out << s << '\n';
        };
        if (!t.header.empty()) line(t.header);
        if (t.rows.empty()) out << "(empty)\n";
        for (const auto& row : t.rows) line(row);
    }
    return out.str();
}

std::string render_csv(const Report& r) {
    std::ostringstream out;
    csv_line(out, "report", {"command", r.command});
    csv_line(out, "report", {"instance", r.instance});
    csv_line(out, "report", {"status", std::string(to_string(r.status))});
    for (const auto& n : r.notes) csv_line(out, "report", {"note", n});
    for (const auto& t : r.tables) {
        csv_line(out, t.name, t.header);
        for (const auto& row : t.rows) csv_line(out, t.name, row);
    }
    return out.str();
}

Table matrix_table(std::string name, const RationalMatrix& m, const std::vector<std::string>& row_labels,
                   const std::vector<std::string>& col_labels) {
    Table t{std::move(name), {"target"}, {}};
    for (const auto& c : col_labels) t.header.push_back(c);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::vector<std::string> row{row_labels.at(r)};
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m.at(r, c)));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table betti_table(const std::vector<std::size_t>& betti) {
    Table t{"betti", {"degree", "betti"}, {}};
    for (std::size_t k = 0; k < betti.size(); ++k) t.rows.push_back({std::to_string(k), std::to_string(betti[k])});
    return t;
}

}  // namespace orbimorse
