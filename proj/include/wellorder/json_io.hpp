#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wellorder/choice.hpp"
#include "wellorder/compare.hpp"
#include "wellorder/oracle.hpp"
#include "wellorder/order.hpp"
#include "wellorder/regular.hpp"
#include "wellorder/sets.hpp"

namespace wellorder {

/// All emitted JSON preserves insertion order so reports are byte-stable.
using json = nlohmann::ordered_json;

inline json labels_json(const Subset& subset) {
    json out = json::array();
    for (std::size_t atom : subset.atom_indices()) out.push_back(subset.ground()->label(atom));
    return out;
}

inline json family_json(const SubsetFamily& family) {
    json out = json::array();
    for (const Subset& member : family.members()) out.push_back(member.text());
    return out;
}

inline json regularity_json(const RegularityReport& report) {
    json cond1{{"pass", report.cond1_linear.pass}};
    if (report.cond1_linear.witness)
        cond1["witness"] = json::array(
            {report.cond1_linear.witness->left.text(), report.cond1_linear.witness->right.text()});

    json cond2{{"pass", report.cond2_well.pass},
               {"mode", report.cond2_well.exhaustive ? "exhaustive" : "sampled"},
               {"subfamilies_checked", report.cond2_well.subfamilies_checked}};
    if (!report.cond2_well.exhaustive) cond2["sample_seed"] = report.cond2_well.sample_seed;
    if (report.cond2_well.witness) {
        json witness = json::array();
        for (const Subset& member : *report.cond2_well.witness) witness.push_back(member.text());
        cond2["witness_family"] = witness;
    }

    json cond3{{"pass", report.cond3_empty.pass}};

    json cond4{{"pass", report.cond4_successor.pass}};
    if (report.cond4_successor.witness) {
        cond4["witness_member"] = report.cond4_successor.witness->member.text();
        cond4["lower_union"] = report.cond4_successor.witness->lower_union.text();
        if (report.cond4_successor.witness->expected)
            cond4["expected_successor"] = report.cond4_successor.witness->expected->text();
    }

    return json{{"cond1_linear", cond1},
                {"cond2_well", cond2},
                {"cond3_empty", cond3},
                {"cond4_successor", cond4},
                {"overall", report.overall}};
}

inline json verdict_json(const ComparabilityVerdict& verdict) {
    return json{{"relation", relation_name(verdict.relation)}, {"core", family_json(verdict.core)}};
}

inline json wellorder_json(const WellOrder& order) {
    json stages = json::array();
    for (const Subset& stage : order.stages) stages.push_back(labels_json(stage));
    json sequence = json::array();
    for (std::size_t atom : order.sequence) sequence.push_back(order.ground->label(atom));
    return json{{"sequence", sequence}, {"stages", stages}};
}

inline json stage_record_json(const StageRecord& record) {
    return json{{"atom", record.r.ground()->label(record.atom)},
                {"r", record.r.text()},
                {"r1", record.r1.text()},
                {"verified", record.verified}};
}

inline json injectivity_json(const InjectivityReport& report) {
    return json{{"pairs_checked", report.pairs_checked},
                {"failures", report.failures},
                {"pass", report.pass}};
}

inline json surjectivity_json(const SurjectivityReport& report) {
    json records = json::array();
    for (const StageRecord& record : report.records) records.push_back(stage_record_json(record));
    return json{{"atoms_checked", report.atoms_checked},
                {"records", records},
                {"failures", report.failures},
                {"pass", report.pass}};
}

inline json wellorder_check_json(const WellOrderCheck& check) {
    json out{{"mode", check.mode == VerifyMode::Exhaustive ? "exhaustive" : "sampled"},
             {"subsets_checked", check.subsets_checked}};
    if (check.mode == VerifyMode::Sampled) out["sample_seed"] = check.sample_seed;
    json failures = json::array();
    for (const Subset& witness : check.failures) failures.push_back(witness.text());
    out["failures"] = failures;
    out["pass"] = check.pass;
    return out;
}

inline json oracle_json(const OracleRun& run) {
    json families = json::array();
    for (const SubsetFamily& family : run.regular_families) families.push_back(family_json(family));
    return json{{"candidate_count", run.candidate_count},
                {"regular_count", run.regular_families.size()},
                {"regular_families", families},
                {"q_union", family_json(union_of_all_regular(run))},
                {"rejected_count", run.rejected_count},
                {"rejection_tallies",
                 json{{"cond1", run.rejection_tallies[0]},
                      {"cond2", run.rejection_tallies[1]},
                      {"cond3", run.rejection_tallies[2]},
                      {"cond4", run.rejection_tallies[3]}}}};
}

inline json table_validation_json(const TableValidation& validation) {
    json missing = json::array();
    for (const Subset& subset : validation.missing) missing.push_back(subset.text());
    json violations = json::array();
    for (const auto& [subset, pick] : validation.violations)
        violations.push_back(json{{"subset", subset.text()}, {"pick", pick}});
    return json{{"missing", missing}, {"violations", violations}, {"valid", validation.valid()}};
}

}  // namespace wellorder
