#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wellorder/compare.hpp"
#include "wellorder/json_io.hpp"
#include "wellorder/oracle.hpp"
#include "wellorder/order.hpp"

namespace wellorder {

inline constexpr const char* kToolName = "wellorder";
inline constexpr const char* kToolVersion = "0.1.0";

/// A fully specified, reproducible problem: the universe, the choice rule,
/// and every knob that influences the run. Two runs of an identical spec
/// produce byte-identical reports.
struct ProblemSpec {
    enum class Verify { Default, Exhaustive, Sampled };
    enum class Format { Json, Text };

    std::vector<std::string> atoms;

    ChoiceFunction::Kind choice_kind = ChoiceFunction::Kind::Min;
    std::uint64_t choice_seed = 0;  ///< seeded rule only
    /// table rule only: (subset labels, picked label), as written in the input
    std::vector<std::pair<std::vector<std::string>, std::string>> table_entries;

    bool oracle = false;
    Verify verify = Verify::Default;
    std::uint64_t sample_count = 1000;
    std::uint64_t sample_seed = 0;
    Format format = Format::Json;
};

namespace detail {

inline void reject_unknown_keys(const json& object, std::initializer_list<const char*> allowed,
                                const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        (void)value;
        bool known = false;
        for (const char* k : allowed)
            if (key == k) known = true;
        if (!known)
            throw Error(Errc::InvalidInput, "unknown field \"" + key + "\" in " + where);
    }
}

inline std::uint64_t require_u64(const json& value, const std::string& where) {
    if (!value.is_number_unsigned())
        throw Error(Errc::InvalidInput, where + " must be an unsigned integer");
    return value.get<std::uint64_t>();
}

}  // namespace detail

/// Parse and schema-check a problem document. Unknown fields are rejected;
/// diagnostics name the offending field.
inline ProblemSpec parse_spec(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(Errc::InvalidInput, "input document must be a JSON object");
    detail::reject_unknown_keys(doc, {"atoms", "choice", "options"}, "input document");

    ProblemSpec spec;

    if (!doc.contains("atoms") || !doc["atoms"].is_array())
        throw Error(Errc::InvalidInput, "\"atoms\" must be an array of strings");
    for (const json& atom : doc["atoms"]) {
        if (!atom.is_string()) throw Error(Errc::InvalidInput, "\"atoms\" entries must be strings");
        spec.atoms.push_back(atom.get<std::string>());
    }
    if (spec.atoms.size() > GroundSet::kCapacity)
        throw Error(Errc::InvalidInput, "\"atoms\" lists " + std::to_string(spec.atoms.size()) +
                                            " labels, capacity is 64");
    for (std::size_t i = 0; i < spec.atoms.size(); ++i) {
        if (spec.atoms[i].empty())
            throw Error(Errc::InvalidInput, "\"atoms\" entry at index " + std::to_string(i) + " is empty");
        for (std::size_t j = i + 1; j < spec.atoms.size(); ++j)
            if (spec.atoms[i] == spec.atoms[j])
                throw Error(Errc::InvalidInput, "duplicate atom label \"" + spec.atoms[i] + "\"");
    }
    auto known_atom = [&spec](const std::string& label) {
        for (const std::string& atom : spec.atoms)
            if (atom == label) return true;
        return false;
    };

    if (!doc.contains("choice") || !doc["choice"].is_object())
        throw Error(Errc::InvalidInput, "\"choice\" must be an object");
    const json& choice = doc["choice"];
    detail::reject_unknown_keys(choice, {"kind", "seed", "entries"}, "\"choice\"");
    const std::string kind = choice.value("kind", "");
    if (kind == "min") {
        if (choice.contains("seed") || choice.contains("entries"))
            throw Error(Errc::InvalidInput, "choice kind \"min\" takes no further fields");
        spec.choice_kind = ChoiceFunction::Kind::Min;
    } else if (kind == "seeded") {
        spec.choice_kind = ChoiceFunction::Kind::Seeded;
        if (!choice.contains("seed"))
            throw Error(Errc::InvalidInput, "choice kind \"seeded\" requires a \"seed\"");
        spec.choice_seed = detail::require_u64(choice["seed"], "\"choice.seed\"");
    } else if (kind == "table") {
        spec.choice_kind = ChoiceFunction::Kind::Table;
        if (!choice.contains("entries") || !choice["entries"].is_array())
            throw Error(Errc::InvalidInput, "choice kind \"table\" requires an \"entries\" array");
        for (const json& entry : choice["entries"]) {
            if (!entry.is_object())
                throw Error(Errc::InvalidInput, "table entries must be objects");
            detail::reject_unknown_keys(entry, {"subset", "pick"}, "table entry");
            if (!entry.contains("subset") || !entry["subset"].is_array() || !entry.contains("pick") ||
                !entry["pick"].is_string())
                throw Error(Errc::InvalidInput,
                            "table entries must have a \"subset\" array and a \"pick\" string");
            std::vector<std::string> subset;
            for (const json& label : entry["subset"]) {
                if (!label.is_string())
                    throw Error(Errc::InvalidInput, "table entry subsets must contain strings");
                if (!known_atom(label.get<std::string>()))
                    throw Error(Errc::InvalidInput,
                                "table entry references unknown atom \"" + label.get<std::string>() + "\"");
                subset.push_back(label.get<std::string>());
            }
            const std::string pick = entry["pick"].get<std::string>();
            if (!known_atom(pick))
                throw Error(Errc::InvalidInput, "table entry picks unknown atom \"" + pick + "\"");
            spec.table_entries.emplace_back(std::move(subset), pick);
        }
    } else {
        throw Error(Errc::InvalidInput, "\"choice.kind\" must be one of \"min\", \"seeded\", \"table\"");
    }

    if (doc.contains("options")) {
        const json& options = doc["options"];
        if (!options.is_object()) throw Error(Errc::InvalidInput, "\"options\" must be an object");
        detail::reject_unknown_keys(options, {"oracle", "verify", "format", "sample_seed"}, "\"options\"");
        if (options.contains("oracle")) {
            if (!options["oracle"].is_boolean())
                throw Error(Errc::InvalidInput, "\"options.oracle\" must be a boolean");
            spec.oracle = options["oracle"].get<bool>();
        }
        if (options.contains("verify")) {
            const json& verify = options["verify"];
            if (verify.is_string() && verify.get<std::string>() == "exhaustive") {
                spec.verify = ProblemSpec::Verify::Exhaustive;
            } else if (verify.is_object() && verify.contains("sample") && verify.size() == 1) {
                spec.verify = ProblemSpec::Verify::Sampled;
                spec.sample_count = detail::require_u64(verify["sample"], "\"options.verify.sample\"");
                if (spec.sample_count == 0)
                    throw Error(Errc::InvalidInput, "\"options.verify.sample\" must be positive");
            } else {
                throw Error(Errc::InvalidInput,
                            "\"options.verify\" must be \"exhaustive\" or {\"sample\": n}");
            }
        }
        if (options.contains("format")) {
            const std::string format = options["format"].is_string()
                                           ? options["format"].get<std::string>()
                                           : std::string();
            if (format == "json") spec.format = ProblemSpec::Format::Json;
            else if (format == "text") spec.format = ProblemSpec::Format::Text;
            else throw Error(Errc::InvalidInput, "\"options.format\" must be \"json\" or \"text\"");
        }
        if (options.contains("sample_seed"))
            spec.sample_seed = detail::require_u64(options["sample_seed"], "\"options.sample_seed\"");
    }

    return spec;
}

/// Build the ground set and choice rule a spec describes. Table rules over
/// at most 16 atoms are validated eagerly; larger ones fail lazily at use.
inline std::pair<Ground, ChoiceFunction> materialize(const ProblemSpec& spec) {
    Ground ground = make_ground(spec.atoms);
    switch (spec.choice_kind) {
        case ChoiceFunction::Kind::Min:
            return {ground, ChoiceFunction::min_rule(ground)};
        case ChoiceFunction::Kind::Seeded:
            return {ground, ChoiceFunction::seeded(ground, spec.choice_seed)};
        case ChoiceFunction::Kind::Table: {
            std::unordered_map<std::uint64_t, std::size_t> entries;
            for (const auto& [labels, pick] : spec.table_entries) {
                std::uint64_t mask = 0;
                for (const std::string& label : labels) {
                    const auto index = ground->index_of(label);
                    if (!index)
                        throw Error(Errc::InvalidInput,
                                    "table entry references unknown atom \"" + label + "\"");
                    mask |= std::uint64_t{1} << *index;
                }
                const auto pick_index = ground->index_of(pick);
                if (!pick_index)
                    throw Error(Errc::InvalidInput, "table entry picks unknown atom \"" + pick + "\"");
                if (mask == 0)
                    throw Error(Errc::InvalidInput, "table entry for the empty subset is meaningless");
                if (!entries.emplace(mask, *pick_index).second)
                    throw Error(Errc::InvalidInput,
                                "duplicate table entry for subset " + Subset(ground, mask).text());
            }
            ChoiceFunction phi = ChoiceFunction::from_table(ground, std::move(entries));
            if (ground->size() <= 16) {
                const TableValidation validation = validate_table(phi);
                if (!validation.valid()) {
                    std::string detail;
                    if (!validation.missing.empty())
                        detail += std::to_string(validation.missing.size()) +
                                  " missing entries (first: " + validation.missing.front().text() + ")";
                    if (!validation.violations.empty()) {
                        if (!detail.empty()) detail += "; ";
                        detail += std::to_string(validation.violations.size()) +
                                  " membership violations (first: " +
                                  validation.violations.front().first.text() + ")";
                    }
                    throw Error(Errc::InvalidInput, "choice table is not a valid choice function: " + detail);
                }
            }
            return {ground, std::move(phi)};
        }
    }
    throw Error(Errc::InternalInvariant, "unhandled choice kind");
}

namespace detail {

inline json input_echo_json(const ProblemSpec& spec, const Ground& ground, ProblemSpec::Verify verify,
                            std::uint64_t sample_count) {
    json choice{{"kind", spec.choice_kind == ChoiceFunction::Kind::Min      ? "min"
                         : spec.choice_kind == ChoiceFunction::Kind::Seeded ? "seeded"
                                                                            : "table"}};
    if (spec.choice_kind == ChoiceFunction::Kind::Seeded) choice["seed"] = spec.choice_seed;
    if (spec.choice_kind == ChoiceFunction::Kind::Table) {
        // echo entries in canonical subset order regardless of input order
        std::vector<std::pair<std::uint64_t, std::size_t>> sorted;
        for (const auto& [labels, pick] : spec.table_entries) {
            std::uint64_t mask = 0;
            for (const std::string& label : labels) mask |= std::uint64_t{1} << *ground->index_of(label);
            sorted.emplace_back(mask, *ground->index_of(pick));
        }
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            return canonical_mask_less(a.first, b.first);
        });
        json entries = json::array();
        for (const auto& [mask, pick] : sorted)
            entries.push_back(json{{"subset", labels_json(Subset(ground, mask))},
                                   {"pick", ground->label(pick)}});
        choice["entries"] = entries;
    }

    json verify_json;
    if (verify == ProblemSpec::Verify::Exhaustive) verify_json = "exhaustive";
    else verify_json = json{{"sample", sample_count}};

    return json{{"atoms", spec.atoms},
                {"choice", choice},
                {"options", json{{"oracle", spec.oracle},
                                 {"verify", verify_json},
                                 {"format", spec.format == ProblemSpec::Format::Json ? "json" : "text"},
                                 {"sample_seed", spec.sample_seed}}}};
}

inline json chain_json(const Chain& chain) {
    json out = json::array();
    for (const Subset& stage : chain.stages) out.push_back(labels_json(stage));
    return out;
}

/// Evaluate the oracle sweep and the cross-checks tied to it.
inline json oracle_section_json(const Ground& ground, const ChoiceFunction& phi, const Chain& chain) {
    const OracleRun run = enumerate_regular_families(ground, phi);
    json section = oracle_json(run);

    // families must be exactly the chain prefixes containing stage 0
    const std::size_t n = ground->size();
    bool prefix_theorem = run.regular_families.size() == n + 1;
    if (prefix_theorem) {
        for (std::size_t k = 1; k <= n + 1; ++k) {
            const SubsetFamily prefix(ground, std::vector<Subset>(chain.stages.begin(),
                                                                  chain.stages.begin() + k));
            bool found = false;
            for (const SubsetFamily& family : run.regular_families)
                if (family == prefix) found = true;
            if (!found) prefix_theorem = false;
        }
    }
    section["prefix_theorem"] = prefix_theorem;

    const SubsetFamily q = union_of_all_regular(run);
    const bool q_equals_chain = q == chain.as_family();
    const bool q_regular = verify_regular(q, phi).overall;
    const bool q_union_full = family_union(q).is_full();
    section["q_cross_check"] = json{{"equals_chain", q_equals_chain},
                                    {"regular", q_regular},
                                    {"union_is_ground", q_union_full}};

    // pairwise comparability over the enumerated families
    std::uint64_t equal = 0, left = 0, right = 0, violations = 0;
    for (const SubsetFamily& a : run.regular_families) {
        for (const SubsetFamily& b : run.regular_families) {
            try {
                switch (compare_regular(a, b, phi).relation) {
                    case Relation::Equal: ++equal; break;
                    case Relation::LeftIsInitialSegmentOfRight: ++left; break;
                    case Relation::RightIsInitialSegmentOfLeft: ++right; break;
                }
            } catch (const TheoremViolationError&) {
                ++violations;
            }
        }
    }
    const std::uint64_t pairs = static_cast<std::uint64_t>(run.regular_families.size()) *
                                run.regular_families.size();
    section["comparability"] = json{{"pairs", pairs},
                                    {"equal", equal},
                                    {"left_initial", left},
                                    {"right_initial", right},
                                    {"violations", violations}};

    // exactly the full chain is maximal
    bool maximality_consistent = true;
    for (const SubsetFamily& family : run.regular_families) {
        const MaximalityReport report = maximality_check(family, phi);
        const bool is_full_chain = family == chain.as_family();
        if (report.maximal != is_full_chain) maximality_consistent = false;
        if (!report.maximal &&
            !(report.extension_regularity && report.extension_regularity->overall))
            maximality_consistent = false;
    }
    section["maximality"] = json{{"only_full_chain_maximal", maximality_consistent}};

    section["all_pass"] = prefix_theorem && q_equals_chain && q_regular && q_union_full &&
                          violations == 0 && maximality_consistent;
    return section;
}

}  // namespace detail

/// Aggregate verdict of a finished report; drives the process exit code.
inline bool report_all_pass(const json& report) {
    bool pass = report.at("regularity").at("overall").get<bool>() &&
                report.at("bijectivity").at("injective").at("pass").get<bool>() &&
                report.at("bijectivity").at("surjective").at("pass").get<bool>() &&
                report.at("wellorder_check").at("pass").get<bool>();
    if (report.contains("oracle") && !report.at("oracle").is_null())
        pass = pass && report.at("oracle").at("all_pass").get<bool>();
    return pass;
}

struct RunOutcome {
    json report;
    int exit_code = 0;  ///< 0 all checks pass, 2 any check failed
};

/// Execute the full pipeline: build the chain, verify its regularity, derive
/// the induced order, certify bijectivity and the least-element property,
/// and optionally sweep the brute-force oracle.
inline RunOutcome run(const ProblemSpec& spec) {
    auto [ground, phi] = materialize(spec);
    const std::size_t n = ground->size();

    if (spec.oracle && n > 4)
        throw Error(Errc::InvalidInput, "the oracle sweep requires at most 4 atoms");
    ProblemSpec::Verify verify = spec.verify;
    if (verify == ProblemSpec::Verify::Default)
        verify = n <= 16 ? ProblemSpec::Verify::Exhaustive : ProblemSpec::Verify::Sampled;
    if (verify == ProblemSpec::Verify::Exhaustive && n > 16)
        throw Error(Errc::InvalidInput, "exhaustive subset verification requires at most 16 atoms");

    const Chain chain = build_chain(ground, phi);
    const SubsetFamily chain_family = chain.as_family();
    const RegularityReport regularity = verify_regular(chain_family, phi, spec.sample_seed);
    const WellOrder order = induced_order(ground, phi);
    const InjectivityReport injective = check_injective(chain_family, phi);
    const SurjectivityReport surjective = check_surjective(chain_family, phi);
    const WellOrderCheck check =
        verify_wellorder(order,
                         verify == ProblemSpec::Verify::Exhaustive ? VerifyMode::Exhaustive
                                                                   : VerifyMode::Sampled,
                         spec.sample_count, spec.sample_seed);

    json report{{"tool", kToolName},
                {"version", kToolVersion},
                {"input", detail::input_echo_json(spec, ground, verify, spec.sample_count)},
                {"seeds", json{{"cond2_sample", spec.sample_seed}, {"subset_sample", spec.sample_seed}}},
                {"chain", detail::chain_json(chain)},
                {"order", wellorder_json(order)},
                {"regularity", regularity_json(regularity)},
                {"bijectivity", json{{"injective", injectivity_json(injective)},
                                     {"surjective", surjectivity_json(surjective)}}},
                {"wellorder_check", wellorder_check_json(check)}};
    if (spec.oracle) report["oracle"] = detail::oracle_section_json(ground, phi, chain);

    const int exit_code = report_all_pass(report) ? 0 : 2;
    return {std::move(report), exit_code};
}

/// Render a finished report as aligned, deterministic text.
inline std::string render_text(const json& report) {
    std::string out;
    auto line = [&out](const std::string& s) { out += s + "\n"; };

    line(std::string(report.at("tool").get<std::string>()) + " " +
         report.at("version").get<std::string>());
    std::string atoms;
    for (const json& atom : report.at("input").at("atoms"))
        atoms += (atoms.empty() ? "" : " ") + atom.get<std::string>();
    line("atoms:   [" + atoms + "]");
    line("choice:  " + report.at("input").at("choice").at("kind").get<std::string>());

    std::string chain;
    for (const json& stage : report.at("chain")) {
        std::string stage_text = "{";
        for (const json& label : stage)
            stage_text += (stage_text.size() > 1 ? "," : "") + label.get<std::string>();
        stage_text += "}";
        chain += (chain.empty() ? "" : " -> ") + stage_text;
    }
    line("chain:   " + chain);

    std::string sequence;
    for (const json& label : report.at("order").at("sequence"))
        sequence += (sequence.empty() ? "" : " < ") + label.get<std::string>();
    line("order:   " + (sequence.empty() ? "(empty)" : sequence));

    auto pf = [](bool pass) { return pass ? "PASS" : "FAIL"; };
    line("checks:");
    line("  regularity    " + std::string(pf(report.at("regularity").at("overall").get<bool>())));
    const json& bij = report.at("bijectivity");
    line("  injectivity   " + std::string(pf(bij.at("injective").at("pass").get<bool>())) + " (" +
         std::to_string(bij.at("injective").at("pairs_checked").get<std::uint64_t>()) + " pairs)");
    line("  surjectivity  " + std::string(pf(bij.at("surjective").at("pass").get<bool>())) + " (" +
         std::to_string(bij.at("surjective").at("atoms_checked").get<std::uint64_t>()) + " atoms)");
    const json& check = report.at("wellorder_check");
    line("  least-element " + std::string(pf(check.at("pass").get<bool>())) + " (" +
         std::to_string(check.at("subsets_checked").get<std::uint64_t>()) + " subsets, " +
         check.at("mode").get<std::string>() + ")");
    if (report.contains("oracle") && !report.at("oracle").is_null()) {
        const json& oracle = report.at("oracle");
        line("  oracle        " + std::string(pf(oracle.at("all_pass").get<bool>())) + " (" +
             std::to_string(oracle.at("regular_count").get<std::uint64_t>()) + " regular of " +
             std::to_string(oracle.at("candidate_count").get<std::uint64_t>()) + " candidates)");
    }
    line(std::string("result: ") + (report_all_pass(report) ? "PASS" : "FAIL"));
    return out;
}

}  // namespace wellorder
