#include "bispinor/io.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iterator>
#include <sstream>

namespace bispinor::io {

namespace {

double number_at(const json& v, const std::string& where) {
    if (!v.is_number()) throw InputError(where + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw InputError(where + ": number is not finite");
    return x;
}

std::vector<double> numbers(const json& v, std::size_t count, const std::string& where) {
    if (!v.is_array() || v.size() != count)
        throw InputError(where + ": expected an array of " + std::to_string(count) + " numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(number_at(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

template <typename Range>
json array_of(const Range& r) {
    json a = json::array();
    for (double x : r) a.push_back(x);
    return a;
}

json vec_json(const Vec4& v) { return array_of(std::array<double, 4>{v(0), v(1), v(2), v(3)}); }

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

CorpusRow parse_row(const json& value, int line) {
    CorpusRow row;
    row.line = line;
    try {
        row.content = parse_quintuple(value, "line " + std::to_string(line));
    } catch (const Error& e) {
        row.content = std::string(e.what());
    }
    return row;
}

}  // namespace

TensorQuintuple QuintupleRecord::local() const {
    if (q.frame == IndexFrame::local) return q;
    const WorldMetric g = metric ? WorldMetric(*metric) : WorldMetric::minkowski();
    return world_to_local(q, tetrad_from_metric(g));
}

QuintupleRecord parse_quintuple(const json& value, const std::string& context) {
    if (!value.is_object()) throw InputError(context + ": expected a JSON object");
    static const std::array<const char*, 7> known{"m", "j", "s", "H", "n", "frame", "metric"};
    for (const auto& [key, _] : value.items()) {
        if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) == known.end())
            throw InputError(context + ": unknown field '" + key + "'");
    }
    for (const char* key : {"m", "j", "s", "H", "n"})
        if (!value.contains(key)) throw InputError(context + ": missing field '" + key + "'");

    QuintupleRecord r;
    r.q.m = number_at(value["m"], context + ": field 'm'");
    r.q.n = number_at(value["n"], context + ": field 'n'");
    const auto j = numbers(value["j"], 4, context + ": field 'j'");
    const auto s = numbers(value["s"], 4, context + ": field 's'");
    const auto h = numbers(value["H"], 6, context + ": field 'H'");
    for (int k = 0; k < 4; ++k) {
        r.q.j(k) = j[k];
        r.q.s(k) = s[k];
    }
    std::copy(h.begin(), h.end(), r.q.H.c.begin());

    r.q.frame = IndexFrame::local;
    if (value.contains("frame")) {
        const json& f = value["frame"];
        if (f == "world")
            r.q.frame = IndexFrame::world;
        else if (f != "local")
            throw InputError(context + ": field 'frame' must be \"local\" or \"world\"");
    }
    if (value.contains("metric")) {
        if (r.q.frame != IndexFrame::world) throw InputError(context + ": field 'metric' requires frame \"world\"");
        const auto g = numbers(value["metric"], 16, context + ": field 'metric'");
        RMat4 m;
        for (int k = 0; k < 16; ++k) m(k / 4, k % 4) = g[k];
        try {
            WorldMetric check(m);
        } catch (const BadSignature& e) {
            throw InputError(context + ": field 'metric': " + e.what());
        }
        r.metric = m;
    }
    return r;
}

json to_json(const TensorQuintuple& q) {
    json out;
    out["m"] = q.m;
    out["j"] = vec_json(q.j);
    out["s"] = vec_json(q.s);
    out["H"] = array_of(q.H.c);
    out["n"] = q.n;
    out["frame"] = std::string(to_string(q.frame));
    return out;
}

json to_json(const QuintupleRecord& record) {
    json out = to_json(record.q);
    if (record.metric) {
        json g = json::array();
        for (int k = 0; k < 16; ++k) g.push_back((*record.metric)(k / 4, k % 4));
        out["metric"] = g;
    }
    return out;
}

json to_json(const SpectralInvariants& inv) {
    return {{"j", inv.j}, {"u2", inv.u2}, {"v2", inv.v2}, {"w", inv.w_inv}};
}

json to_json(const SpectrumReport& report) {
    json out;
    out["lambda_closed"] = report.lambda_closed ? array_of(*report.lambda_closed) : json(nullptr);
    out["lambda_numeric"] = report.lambda_numeric ? array_of(*report.lambda_numeric) : json(nullptr);
    out["lambda_matrix"] = array_of(report.lambda_matrix);
    out["margin"] = report.feasibility.margin;
    out["feasible"] = report.feasibility.feasible;
    out["rank"] = report.feasibility.rank;
    out["kappa"] = report.kappa;
    out["invariants"] = report.invariants ? to_json(*report.invariants) : json(nullptr);
    out["reason"] = report.feasibility.reason;
    return out;
}

json matrix_to_json(const Mat4& m, RepKind kind) {
    json re = json::array(), im = json::array();
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    json out{{"kind", std::string(to_string(kind))}, {"re", re}};
    if (!is_exactly_real(m)) out["im"] = im;
    return out;
}

Mat4 matrix_from_json(const json& value, const std::string& context) {
    if (!value.is_object()) throw InputError(context + ": expected a matrix object");
    for (const auto& [key, _] : value.items())
        if (key != "kind" && key != "re" && key != "im") throw InputError(context + ": unknown field '" + key + "'");
    if (!value.contains("re")) throw InputError(context + ": missing field 're'");
    const auto re = numbers(value["re"], 16, context + ": field 're'");
    std::vector<double> im(16, 0.0);
    if (value.contains("im")) im = numbers(value["im"], 16, context + ": field 'im'");
    Mat4 m;
    for (int k = 0; k < 16; ++k) m(k / 4, k % 4) = cplx(re[k], im[k]);
    return m;
}

Corpus read_corpus(std::istream& in) {
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Corpus corpus;

    // A single (possibly pretty-printed) object or array.
    const json whole = json::parse(text, nullptr, false);
    if (!whole.is_discarded() && (whole.is_array() || (whole.is_object() && !whole.contains("schema")))) {
        if (whole.is_object()) {
            corpus.rows.push_back(parse_row(whole, 1));
        } else {
            for (std::size_t i = 0; i < whole.size(); ++i) corpus.rows.push_back(parse_row(whole[i], static_cast<int>(i) + 1));
        }
        return corpus;
    }

    std::istringstream lines(text);
    std::string line;
    int number = 0;
    bool first = true;
    while (std::getline(lines, line)) {
        ++number;
        if (blank(line)) continue;
        json value;
        try {
            value = json::parse(line);
        } catch (const json::parse_error& e) {
            corpus.rows.push_back({number, "line " + std::to_string(number) + ": invalid JSON (" + e.what() + ")"});
            first = false;
            continue;
        }
        if (first && value.is_object() && value.contains("schema")) {
            if (value["schema"] != kCorpusSchema)
                throw InputError("line " + std::to_string(number) + ": unsupported schema " + value["schema"].dump());
            corpus.header = value;
        } else {
            corpus.rows.push_back(parse_row(value, number));
        }
        first = false;
    }
    return corpus;
}

std::vector<double> parse_number_list(const std::string& text, std::size_t count, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            throw InputError(what + ": '" + item + "' is not a number");
        }
        if (!blank(item.substr(used))) throw InputError(what + ": '" + item + "' is not a number");
        if (!std::isfinite(x)) throw InputError(what + ": values must be finite");
        out.push_back(x);
    }
    if (out.size() != count)
        throw InputError(what + ": expected " + std::to_string(count) + " comma-separated numbers, got " +
                         std::to_string(out.size()));
    return out;
}

}  // namespace bispinor::io
