#include <doctest.h>

#include <fstream>
#include <iterator>

#include "orbimorse/commands.hpp"
#include "orbimorse/error.hpp"
#include "orbimorse/instance.hpp"
#include "orbimorse/report.hpp"
#include "support.hpp"

using namespace orbimorse;
namespace fs = std::filesystem;

namespace {

std::string parse_error(std::string_view text) {
    try {
        parse_instance(text);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        return e.what();
    }
    FAIL("no error");
    return {};
}

const CheckOutcome* find_check(const std::vector<CheckOutcome>& v, const std::string& name) {
    for (const auto& c : v)
        if (c.check == name) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("parse, serialize, parse is the identity on the corpus") {
    const auto files = corpus_files(testing::corpus_dir());
    CHECK(files.size() >= 6);
    for (const auto& f : files) {
        const auto a = load_instance(f);
        const auto text = serialize(a);
        const auto b = parse_instance(text);
        CHECK(a == b);
        CHECK(serialize(b) == text);
        std::ifstream in(f);
        const std::string on_disk((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        CHECK(on_disk == text);
    }
}

TEST_CASE("parse errors name their location") {
    const auto dangling = testing::data_dir() / "dangling_endpoint.json";
    try {
        load_instance(dangling);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("\"t\"") != std::string::npos);
        CHECK(std::string(e.what()).find("flows[2].dst") != std::string::npos);
    }
    try {
        load_instance(testing::data_dir() / "malformed.json");
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
    CHECK(parse_error(R"({"kind": "intrinsic", "name": "x", "ambient_dim": 1, "crit_points": [], "flows": [],
                          "colour": 3})")
              .find("colour") != std::string::npos);
    CHECK(parse_error(R"({"kind": "cubical", "name": "x"})").find("cubical") != std::string::npos);
    CHECK(parse_error(R"({"kind": "global_quotient", "name": "x", "ambient_dim": 0,
                          "group": {"degree": 1, "generators": []},
                          "crit_points": [{"label": "p", "index": 0, "value": "1/0"}], "flows": []})")
              .find("value") != std::string::npos);
    try {
        load_instance(testing::data_dir() / "missing.json");
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IoError);
    }
}

TEST_CASE("exit codes") {
    CHECK(exit_code(status_for(ErrorCode::ParseError)) == 4);
    CHECK(exit_code(status_for(ErrorCode::IoError)) == 4);
    CHECK(exit_code(status_for(ErrorCode::NotAComplex)) == 3);
    CHECK(exit_code(status_for(ErrorCode::UnknownPoint)) == 2);

    CHECK(cmd_validate(testing::corpus_dir() / "heart.json").status == Status::Ok);
    CHECK(cmd_validate(testing::data_dir() / "heart_flipped_sign.json").status == Status::Invalid);
    CHECK(cmd_validate(testing::data_dir() / "d_squared_failure.json").status == Status::Invalid);
    CHECK(cmd_validate(testing::data_dir() / "dangling_endpoint.json").status == Status::IoError);
    CHECK(cmd_validate(testing::data_dir() / "malformed.json").status == Status::IoError);
    CHECK(cmd_homology(testing::data_dir() / "d_squared_failure.json", Convention::Plus).status == Status::Mismatch);
    CHECK(cmd_compare(testing::corpus_dir() / "heart_naive.json").status != Status::Ok);
}

TEST_CASE("homology command") {
    for (auto conv : {Convention::Plus, Convention::Minus}) {
        for (const auto* name : {"heart.json", "football_p3.json"}) {
            const auto r = cmd_homology(testing::corpus_dir() / name, conv);
            CHECK(r.status == Status::Ok);
            const Table* b = nullptr;
            for (const auto& t : r.tables)
                if (t.name == "betti") b = &t;
            REQUIRE(b != nullptr);
            REQUIRE(b->rows.size() == 3);
            CHECK(b->rows[0][1] == "1");
            CHECK(b->rows[1][1] == "0");
            CHECK(b->rows[2][1] == "1");
        }
    }
}

TEST_CASE("derive writes an intrinsic instance") {
    const auto out = fs::temp_directory_path() / "orbimorse_test_derive.json";
    for (const auto* name : {"heart", "torus_z2", "sphere_trivial"}) {
        const auto r = cmd_derive(testing::corpus_dir() / (std::string(name) + ".json"), out);
        CHECK(r.status == Status::Ok);
        const auto inst = load_instance(out);
        CHECK(inst.kind == InstanceKind::Intrinsic);
        REQUIRE(inst.intrinsic.has_value());
        const auto source = testing::corpus(name);
        CHECK(betti(boundary_plus(*inst.intrinsic)) == source.expect.quotient_betti.value());
    }
    const auto heart = load_instance((cmd_derive(testing::corpus_dir() / "heart.json", out), out));
    CHECK(heart.intrinsic->crit_points[0].iso_order == 1);
    CHECK(heart.intrinsic->crit_points[2].iso_order == 2);
    fs::remove(out);
}

TEST_CASE("compare and corpus commands") {
    CHECK(cmd_compare(testing::corpus_dir() / "heart.json").status == Status::Ok);
    CHECK(cmd_corpus_list(testing::corpus_dir()).tables.at(0).rows.size() == corpus_files(testing::corpus_dir()).size());
    const auto one = cmd_corpus_run(testing::corpus_dir(), std::string("football_p3"));
    CHECK(one.status == Status::Ok);
    for (const auto& row : one.tables.at(0).rows) CHECK(row[0] == "football_p3");
    CHECK(cmd_corpus_run(testing::corpus_dir(), std::nullopt).status == Status::Ok);
}

TEST_CASE("every corpus instance passes all its checks") {
    for (const auto& inst : testing::all_corpus())
        for (const auto& c : check_instance(inst)) {
            INFO(inst.name << " " << c.check << " " << c.detail);
            CHECK(c.ok);
        }
}

TEST_CASE("negative fixtures fail the expected check") {
    const auto checks = check_instance(testing::fixture("heart_flipped_sign"));
    const auto* v = find_check(checks, "validate");
    REQUIRE(v != nullptr);
    CHECK(v->ok);  // the fixture expects to be invalid
}

TEST_CASE("reports render deterministically") {
    const auto a = cmd_corpus_run(testing::corpus_dir(), std::nullopt);
    const auto b = cmd_corpus_run(testing::corpus_dir(), std::nullopt);
    CHECK(render_text(a) == render_text(b));
    CHECK(render_csv(a) == render_csv(b));
    Report r{"homology", "x"};
    r.tables.push_back(Table{"t", {"a", "b"}, {{"1/2", "x,y"}}});
    CHECK(render_csv(r) == "report,command,homology\nreport,instance,x\nreport,status,ok\nt,a,b\nt,1/2,\"x,y\"\n");
}
