#include "affsim/spec_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "affsim/errors.hpp"

namespace affsim {

namespace {

void sort_and_check_unique(std::vector<RawEntry>& entries, const std::vector<std::size_t>& positions) {
    std::set<int> seen;
    for (std::size_t k = 0; k < entries.size(); ++k)
        if (!seen.insert(entries[k].n).second)
            throw ParseError("duplicate dimension n=" + std::to_string(entries[k].n), positions[k]);
    std::sort(entries.begin(), entries.end(), [](const RawEntry& a, const RawEntry& b) { return a.n < b.n; });
}

}  // namespace

RawSpec parse_inline_spec(std::string_view text) {
    RawSpec out;
    std::vector<std::size_t> positions;
    std::size_t pos = 0;
    auto skip_blanks = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto integer = [&](std::string_view what) {
        skip_blanks();
        const std::size_t start = pos;
        if (pos < text.size() && text[pos] == '-') ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        int value = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + pos, value);
        if (ec != std::errc{} || ptr != text.data() + pos)
            throw ParseError("expected integer " + std::string(what), start);
        skip_blanks();
        return std::pair{value, start};
    };

    skip_blanks();
    if (pos == text.size()) throw ParseError("empty support spec", 0);
    while (true) {
        const auto [n, n_pos] = integer("dimension n");
        if (pos >= text.size() || text[pos] != ':') throw ParseError("expected ':' after dimension", pos);
        ++pos;
        const auto [a, a_pos] = integer("multiplicity a_n");
        if (n < 2) throw ParseError("dimension must be >= 2, got " + std::to_string(n), n_pos);
        if (a < 1) throw ParseError("multiplicity must be >= 1, got " + std::to_string(a), a_pos);
        out.entries.push_back({n, a, std::nullopt});
        positions.push_back(n_pos);
        if (pos == text.size()) break;
        if (text[pos] != ',') throw ParseError("expected ',' between entries", pos);
        ++pos;
    }
    sort_and_check_unique(out.entries, positions);
    return out;
}

FieldChoice parse_field(std::string_view text) {
    if (text == "q" || text == "Q") return {FieldKind::Rational, 0};
    if (text.size() > 3 && (text.substr(0, 3) == "fp:" || text.substr(0, 3) == "Fp:")) {
        std::uint64_t p = 0;
        const auto digits = text.substr(3);
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec != std::errc{} || ptr != digits.data() + digits.size())
            throw ParseError("bad prime in field '" + std::string(text) + "'", 3);
        if (!ModP::is_prime(p)) throw ConfigError("field modulus " + std::to_string(p) + " is not prime");
        if (p > ModP::max_modulus) throw ConfigError("field modulus " + std::to_string(p) + " exceeds 2^32 - 1");
        return {FieldKind::Prime, p};
    }
    throw ParseError("field must be 'q' or 'fp:<prime>', got '" + std::string(text) + "'", 0);
}

namespace {

FieldChoice field_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "Q" || s == "q") return {FieldKind::Rational, 0};
        return parse_field(s);
    }
    if (j.is_object() && j.contains("Fp") && j["Fp"].is_number_unsigned()) {
        const auto p = j["Fp"].get<std::uint64_t>();
        return parse_field("fp:" + std::to_string(p));
    }
    throw ParseError("\"field\" must be \"Q\" or {\"Fp\": p}", 0);
}

}  // namespace

RawSpec parse_json_spec(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(std::string("malformed JSON spec: ") + err.what(), err.byte);
    }
    if (!j.is_object()) throw ParseError("JSON spec must be an object", 0);

    RawSpec out;
    if (j.contains("field")) out.field = field_from_json(j["field"]);
    if (!j.contains("entries") || !j["entries"].is_array()) throw ParseError("JSON spec needs an \"entries\" array", 0);
    if (j["entries"].empty()) throw ParseError("empty support spec", 0);

    std::vector<std::size_t> positions;
    std::size_t index = 0;
    for (const auto& e : j["entries"]) {
        if (!e.is_object() || !e.contains("n") || !e.contains("a") || !e["n"].is_number_integer() ||
            !e["a"].is_number_integer())
            throw ParseError("entry " + std::to_string(index) + " needs integer \"n\" and \"a\"", index);
        RawEntry entry{e["n"].get<int>(), e["a"].get<int>(), std::nullopt};
        if (entry.n < 2) throw ParseError("entry " + std::to_string(index) + ": dimension must be >= 2", index);
        if (entry.count < 1) throw ParseError("entry " + std::to_string(index) + ": multiplicity must be >= 1", index);
        if (e.contains("lambdas")) {
            if (!e["lambdas"].is_array()) throw ParseError("entry " + std::to_string(index) + ": lambdas must be an array", index);
            std::vector<std::string> lams;
            for (const auto& l : e["lambdas"]) {
                if (l.is_string())
                    lams.push_back(l.get<std::string>());
                else if (l.is_number_integer())
                    lams.push_back(std::to_string(l.get<long long>()));
                else
                    throw ParseError("entry " + std::to_string(index) + ": lambdas must be \"p/q\" strings", index);
            }
            entry.lambdas = std::move(lams);
        }
        out.entries.push_back(std::move(entry));
        positions.push_back(index++);
    }
    sort_and_check_unique(out.entries, positions);
    return out;
}

RawSpec parse_spec_text(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return parse_json_spec(text);
    return parse_inline_spec(text);
}

LambdaTable parse_lambda_table(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(std::string("malformed lambda file: ") + err.what(), err.byte);
    }
    if (!j.is_object()) throw ParseError("lambda file must map dimensions to lists of \"p/q\" strings", 0);
    LambdaTable out;
    for (const auto& [key, value] : j.items()) {
        int n = 0;
        const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), n);
        if (ec != std::errc{} || ptr != key.data() + key.size()) throw ParseError("bad dimension key '" + key + "'", 0);
        if (!value.is_array()) throw ParseError("lambdas for n=" + key + " must be an array", 0);
        auto& lams = out[n];
        for (const auto& l : value) {
            if (!l.is_string()) throw ParseError("lambdas for n=" + key + " must be strings", 0);
            lams.push_back(l.get<std::string>());
        }
    }
    return out;
}

OrderedJson field_to_json(const FieldChoice& f) {
    if (f.kind == FieldKind::Rational) return "Q";
    OrderedJson j;
    j["Fp"] = f.prime;
    return j;
}

std::string field_label(const FieldChoice& f) {
    return f.kind == FieldKind::Rational ? "Q" : "F_" + std::to_string(f.prime);
}

}  // namespace affsim
