#include "pslab/experiments.hpp"

#include <chrono>
#include <sstream>

namespace pslab {

namespace {

std::string strip_ws(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<ExperimentCellConfig> parse_experiment_cells(const std::string& text) {
    std::vector<ExperimentCellConfig> cells;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = strip_ws(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream row(t);
        std::string model_name;
        std::string field;
        ExperimentCellConfig cell;
        try {
            if (!std::getline(row, model_name, ',')) throw DomainError("missing model");
            cell.model = culture_from_name(strip_ws(model_name));
            if (!std::getline(row, field, ',')) throw DomainError("missing n");
            cell.n = std::stoi(strip_ws(field));
            if (!std::getline(row, field, ',')) throw DomainError("missing m");
            cell.m = std::stoi(strip_ws(field));
            if (!std::getline(row, field, ',')) throw DomainError("missing samples");
            cell.samples = std::stoi(strip_ws(field));
        } catch (const std::exception& e) {
            throw DomainError("experiment config line " + std::to_string(line_no) + ": " +
                              e.what());
        }
        if (cell.n < 1 || cell.m < 1 || cell.samples < 1)
            throw DomainError("experiment config line " + std::to_string(line_no) +
                              ": n, m, samples must be positive");
        cells.push_back(cell);
    }
    return cells;
}

Rational CellSummary::mean_pne() const {
    if (samples_done == 0) return Rational();
    return Rational(BigInt(total_pne), BigInt(samples_done));
}

Rational CellSummary::frac(std::uint64_t part) const {
    if (total_pne == 0) return Rational();
    return Rational(BigInt(part), BigInt(total_pne));
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    ExperimentResult result;
    std::string csv =
        "model,n,m,sample,seed,num_pne,num_equal,num_increase,num_decrease,"
        "max_pct_increase,max_pct_decrease\n";

    std::uint64_t global_sample = 0;
    for (std::size_t ci = 0; ci < config.cells.size(); ++ci) {
        const ExperimentCellConfig& cc = config.cells[ci];
        CellSummary summary;
        summary.model = cc.model;
        summary.n = cc.n;
        summary.m = cc.m;
        auto started = std::chrono::steady_clock::now();

        for (int s = 0; s < cc.samples; ++s, ++global_sample) {
            // Documented split: sample_seed = derive(root, ci * 1000003 + s),
            // instance stream at index 0, utility stream at index 1.
            std::uint64_t sample_seed =
                derive_seed(config.root_seed, ci * 1000003ull + static_cast<std::uint64_t>(s));
            std::uint64_t instance_seed = derive_seed(sample_seed, 0);
            std::uint64_t utility_seed = derive_seed(sample_seed, 1);

            CultureConfig culture;
            culture.model = cc.model;
            culture.n = cc.n;
            culture.m = cc.m;
            culture.seed = instance_seed;
            culture.mallows_phi = config.mallows_phi;
            Instance inst = generate(culture);
            UtilityProfile utils = gen_random_utility_profile(inst, utility_seed);

            EnumerateResult enumeration;
            try {
                enumeration = enumerate_pne(inst, PreferenceRelation::EU, utils, config.jobs,
                                            config.limits);
            } catch (const BoundExceeded&) {
                ++summary.samples_skipped;
                continue;
            }

            WelfareReport report;
            report.sw_truthful = social_welfare(run_ps(inst).assignment, utils);
            std::uint64_t eq = 0;
            std::uint64_t inc = 0;
            std::uint64_t dec = 0;
            Rational max_inc;
            Rational max_dec;
            for (const PneEntry& entry : enumeration.equilibria) {
                WelfareRecord rec = report.classify(entry.profile_id, entry.social_welfare);
                switch (rec.cls) {
                    case WelfareClass::Equal: ++eq; break;
                    case WelfareClass::Increase:
                        ++inc;
                        max_inc = max(max_inc, rec.pct_change);
                        break;
                    case WelfareClass::Decrease:
                        ++dec;
                        max_dec = max(max_dec, rec.pct_change);
                        break;
                }
            }

            // Slow-path audit on 1% of samples: reclassify from scratch.
            if (global_sample % 100 == 0) {
                std::uint64_t eq2 = 0, inc2 = 0, dec2 = 0;
                for (const PneEntry& entry : enumeration.equilibria) {
                    Instance reported = inst;
                    reported.profile = entry.profile;
                    Rational sw = social_welfare(run_ps(reported).assignment, utils);
                    if (sw != entry.social_welfare)
                        throw std::logic_error("experiment audit: social welfare mismatch");
                    int cmp = sw.compare(report.sw_truthful);
                    (cmp == 0 ? eq2 : cmp > 0 ? inc2 : dec2) += 1;
                }
                if (eq2 != eq || inc2 != inc || dec2 != dec)
                    throw std::logic_error("experiment audit: classification mismatch");
            }

            summary.samples_done += 1;
            summary.total_pne += enumeration.equilibria.size();
            summary.total_equal += eq;
            summary.total_increase += inc;
            summary.total_decrease += dec;
            summary.max_pct_increase = max(summary.max_pct_increase, max_inc);
            summary.max_pct_decrease = max(summary.max_pct_decrease, max_dec);

            csv += culture_name(cc.model);
            csv += "," + std::to_string(cc.n) + "," + std::to_string(cc.m);
            csv += "," + std::to_string(s);
            csv += "," + std::to_string(sample_seed);
            csv += "," + std::to_string(enumeration.equilibria.size());
            csv += "," + std::to_string(eq) + "," + std::to_string(inc) + "," +
                   std::to_string(dec);
            csv += "," + max_inc.to_decimal(4) + "," + max_dec.to_decimal(4);
            csv += "\n";
        }
        summary.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        result.cells.push_back(std::move(summary));
    }
    result.per_sample_csv = std::move(csv);
    return result;
}

std::string classification_csv(const std::vector<CellSummary>& cells) {
    std::string out = "model,n,m,frac_equal,frac_increase,frac_decrease\n";
    for (const CellSummary& c : cells) {
        out += culture_name(c.model);
        out += "," + std::to_string(c.n) + "," + std::to_string(c.m);
        out += "," + c.frac(c.total_equal).to_decimal(4);
        out += "," + c.frac(c.total_increase).to_decimal(4);
        out += "," + c.frac(c.total_decrease).to_decimal(4);
        out += "\n";
    }
    return out;
}

std::string extremes_csv(const std::vector<CellSummary>& cells) {
    std::string out = "model,n,m,max_pct_increase,max_pct_decrease,avg_num_pne\n";
    for (const CellSummary& c : cells) {
        out += culture_name(c.model);
        out += "," + std::to_string(c.n) + "," + std::to_string(c.m);
        out += "," + c.max_pct_increase.to_decimal(4);
        out += "," + c.max_pct_decrease.to_decimal(4);
        out += "," + c.mean_pne().to_decimal(4);
        out += "\n";
    }
    return out;
}

}  // namespace pslab
