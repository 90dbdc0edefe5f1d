#include "test_support.hpp"

#include "bispinor/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace bispinor;
using io::json;

namespace {

const char* kRow = R"({"m":0,"j":[2,0,0,0],"s":[0,0,0,0],"H":[0.3,0,0,0,0,0.4],"n":0})";

io::Corpus corpus_of(const std::string& text) {
    std::istringstream in(text);
    return io::read_corpus(in);
}

}  // namespace

TEST_CASE("parse a local quintuple") {
    const auto r = io::parse_quintuple(json::parse(kRow));
    CHECK(r.q.frame == IndexFrame::local);
    CHECK(r.q.j(0) == 2.0);
    CHECK(r.q.H(0, 1) == 0.3);
    CHECK(r.q.H(2, 3) == 0.4);
    CHECK_FALSE(r.metric);
}

TEST_CASE("strict parsing names the offending field") {
    auto fails_with = [](const std::string& text, const std::string& needle) {
        try {
            io::parse_quintuple(json::parse(text), "line 7");
        } catch (const InputError& e) {
            const std::string what = e.what();
            return what.find(needle) != std::string::npos && what.find("line 7") != std::string::npos;
        }
        return false;
    };
    CHECK(fails_with(R"({"j":[1,0,0,0],"s":[0,0,0,0],"H":[0,0,0,0,0,0],"n":0})", "'m'"));
    CHECK(fails_with(R"({"m":0,"j":[1,0,0],"s":[0,0,0,0],"H":[0,0,0,0,0,0],"n":0})", "'j'"));
    CHECK(fails_with(R"({"m":0,"j":[1,0,0,0],"s":[0,0,0,0],"H":[0,0,0,0,0,"x"],"n":0})", "'H'"));
    CHECK(fails_with(R"({"m":0,"j":[1,0,0,0],"s":[0,0,0,0],"H":[0,0,0,0,0,0],"n":0,"extra":1})", "'extra'"));
    CHECK(fails_with(R"({"m":0,"j":[1,0,0,0],"s":[0,0,0,0],"H":[0,0,0,0,0,0],"n":0,"frame":"up"})", "'frame'"));
    CHECK(fails_with(
        R"({"m":0,"j":[1,0,0,0],"s":[0,0,0,0],"H":[0,0,0,0,0,0],"n":0,"metric":[-1,0,0,0,0,1,0,0,0,0,1,0,0,0,0,1]})",
        "'metric'"));
    CHECK(fails_with(
        R"({"m":0,"j":[1,0,0,0],"s":[0,0,0,0],"H":[0,0,0,0,0,0],"n":0,"frame":"world","metric":[1,0,0,0,0,1,0,0,0,0,1,0,0,0,0,1]})",
        "'metric'"));
}

TEST_CASE("world records are converted with the canonical tetrad") {
    const json row = json::parse(
        R"({"m":0,"j":[1,0,0,0],"s":[0,0,0,0],"H":[0,0,0,0,0,0],"n":0,"frame":"world","metric":[-4,0,0,0,0,1,0,0,0,0,1,0,0,0,0,1]})");
    const auto r = io::parse_quintuple(row);
    REQUIRE(r.metric);
    const TensorQuintuple local = r.local();
    // g_00 = -4, so the unit time leg is half the coordinate vector and j^0 doubles.
    CHECK(local.frame == IndexFrame::local);
    CHECK(std::abs(local.j(0)) == doctest::Approx(2.0));
}

TEST_CASE("json round trip of quintuples and matrices") {
    Rng rng(50);
    const TensorQuintuple q = random_quintuple(rng, Sector::full);
    const auto back = io::parse_quintuple(io::to_json(q));
    CHECK(max_abs_diff(q, back.q) == 0.0);

    const Mat4 z = random_matrix(rng, false);
    CHECK(max_abs(Mat4(io::matrix_from_json(io::matrix_to_json(z, RepKind::dirac_complex)) - z)) == 0.0);
    const json real = io::matrix_to_json(random_matrix(rng, true), RepKind::majorana_real);
    CHECK_FALSE(real.contains("im"));
    CHECK_THROWS_AS(io::matrix_from_json(json{{"re", json::array()}}), InputError);
}

TEST_CASE("corpus reading: NDJSON with header, arrays, single objects") {
    const auto nd = corpus_of(std::string(R"({"schema":"quintuple/1","seed":3})") + "\n" + kRow + "\n\n" + kRow + "\n");
    REQUIRE(nd.header);
    CHECK((*nd.header)["seed"] == 3);
    REQUIRE(nd.rows.size() == 2);
    CHECK(nd.rows[0].line == 2);
    CHECK(nd.rows[1].line == 4);

    const auto arr = corpus_of(std::string("[") + kRow + "," + kRow + "]");
    CHECK(arr.rows.size() == 2);
    const auto one = corpus_of(kRow);
    CHECK(one.rows.size() == 1);

    const auto bad = corpus_of(std::string(kRow) + "\n{not json\n");
    REQUIRE(bad.rows.size() == 2);
    CHECK(std::holds_alternative<io::QuintupleRecord>(bad.rows[0].content));
    CHECK(std::holds_alternative<std::string>(bad.rows[1].content));

    CHECK_THROWS_AS(corpus_of(R"({"schema":"other/2"})" + std::string("\n") + kRow), InputError);
}

TEST_CASE("number lists") {
    CHECK(io::parse_number_list("1, 2.5,-3", 3, "x") == std::vector<double>{1, 2.5, -3});
    CHECK_THROWS_AS(io::parse_number_list("1,2", 3, "x"), InputError);
    CHECK_THROWS_AS(io::parse_number_list("1,a,3", 3, "x"), InputError);
    CHECK_THROWS_AS(io::parse_number_list("1,inf,3", 3, "x"), InputError);
}

TEST_CASE("spectrum report json has the documented keys") {
    const auto r = io::parse_quintuple(json::parse(kRow));
    const json j = io::to_json(spectrum_report(r.q, testing::majorana()));
    for (const char* key : {"lambda_closed", "lambda_numeric", "lambda_matrix", "margin", "feasible", "rank", "kappa",
                            "invariants", "reason"})
        CHECK(j.contains(key));
    CHECK(j["invariants"]["j"].get<double>() == doctest::Approx(2.0));
}
