#pragma once

// Textual support specs.
//
// Inline:  "n:a[,n:a]..."                     e.g. "2:3,5:2"
// JSON:    {"field": "Q" | {"Fp": p},
//           "entries": [{"n": 2, "a": 3, "lambdas": ["1", "-1/2", "5"]}, ...]}
// Lambdas are exact "p/q" strings; entries without them use lambda_{n,i} = i.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "affsim/algebra.hpp"

namespace affsim {

using OrderedJson = nlohmann::ordered_json;

enum class FieldKind { Rational, Prime };

struct FieldChoice {
    FieldKind kind = FieldKind::Rational;
    std::uint64_t prime = 0;

    friend bool operator==(const FieldChoice&, const FieldChoice&) = default;
};

struct RawEntry {
    int n = 0;
    int count = 0;
    std::optional<std::vector<std::string>> lambdas;
};

/// Parsed but not yet validated against a field.
struct RawSpec {
    std::optional<FieldChoice> field;
    std::vector<RawEntry> entries;  // sorted by n
};

/// Lambda overrides keyed by dimension.
using LambdaTable = std::map<int, std::vector<std::string>>;

RawSpec parse_inline_spec(std::string_view text);
RawSpec parse_json_spec(std::string_view text);
/// JSON when the first non-blank character is '{', inline otherwise.
RawSpec parse_spec_text(std::string_view text);

/// "q" | "Q" | "fp:<prime>"
FieldChoice parse_field(std::string_view text);
/// {"2": ["1", "2"], "3": ["5"]}
LambdaTable parse_lambda_table(std::string_view text);

OrderedJson field_to_json(const FieldChoice& f);
std::string field_label(const FieldChoice& f);

/// Validated spec over S. Lambdas come from `overrides`, then the raw entry,
/// then the default scheme. The ModP modulus must already be in scope.
template <ExactField S>
SpecPtr<S> materialize(const RawSpec& raw, const LambdaTable& overrides = {}) {
    for (const auto& [n, lams] : overrides)
        if (std::none_of(raw.entries.begin(), raw.entries.end(), [n = n](const RawEntry& e) { return e.n == n; }))
            throw ConfigError("lambda table names dimension " + std::to_string(n) + ", which is not in the support");
    std::vector<std::pair<int, int>> needs_default;
    for (const auto& en : raw.entries)
        if (!overrides.contains(en.n) && !en.lambdas) needs_default.emplace_back(en.n, en.count);
    auto defaults = default_lambda_scheme<S>(needs_default);

    std::vector<SupportEntry<S>> entries;
    std::size_t next_default = 0;
    for (const auto& en : raw.entries) {
        SupportEntry<S> out{en.n, en.count, {}};
        const std::vector<std::string>* text = nullptr;
        if (auto it = overrides.find(en.n); it != overrides.end())
            text = &it->second;
        else if (en.lambdas)
            text = &*en.lambdas;
        if (text != nullptr)
            for (const auto& s : *text) out.lambdas.push_back(parse_scalar<S>(s));
        else
            out.lambdas = std::move(defaults[next_default++]);
        entries.push_back(std::move(out));
    }
    return SupportSpec<S>::create(std::move(entries));
}

template <ExactField S>
OrderedJson spec_to_json(const SupportSpec<S>& spec, const FieldChoice& field) {
    OrderedJson j;
    j["field"] = field_to_json(field);
    j["entries"] = OrderedJson::array();
    for (const auto& en : spec.entries()) {
        OrderedJson e;
        e["n"] = en.n;
        e["a"] = en.count;
        e["lambdas"] = OrderedJson::array();
        for (const auto& l : en.lambdas) e["lambdas"].push_back(to_string(l));
        j["entries"].push_back(std::move(e));
    }
    return j;
}

}  // namespace affsim
