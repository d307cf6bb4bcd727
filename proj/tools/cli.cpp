// Copyright 2026 The defermion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "defermion/emulator.hpp"
#include "defermion/oracle.hpp"
#include "defermion/protocols.hpp"

namespace defermion::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kWarnQubits = 20;
constexpr double kEdTolerance = 1e-10;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
        throw std::invalid_argument("invalid value for " + key + ": '" + text + "' (expected a finite number)");
    }
    return v;
}

long long parse_int(const std::string& key, const std::string& text) {
    long long v = 0;
    const char* end = text.data() + text.size();
    auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) {
        throw std::invalid_argument("invalid value for " + key + ": '" + text + "' (expected an integer)");
    }
    return v;
}

int parse_int32(const std::string& key, const std::string& text) {
    long long v = parse_int(key, text);
    if (v < -(1LL << 30) || v > (1LL << 30)) {
        throw std::invalid_argument("value for " + key + " out of range: " + text);
    }
    return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no" || text == "off") {
        return false;
    }
    throw std::invalid_argument("invalid value for " + key + ": '" + text + "' (expected true or false)");
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        out.push_back(parse_double(key, trim(item)));
    }
    if (out.empty()) {
        throw std::invalid_argument("empty list for " + key);
    }
    return out;
}

std::string list_text(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + format_double(v[i]);
    }
    return s;
}

std::string excitation_text(Excitation e) {
    switch (e) {
        case Excitation::Spin:
            return "spin";
        case Excitation::Charge:
            return "charge";
        default:
            return "none";
    }
}

struct KeyInfo {
    const char* key;
    const char* help;
};

// Sorted by key.
const std::vector<KeyInfo>& key_table() {
    static const std::vector<KeyInfo> table = {
        {"U", "on-site interaction"},
        {"alpha_b", "bond penalty strength"},
        {"alpha_p", "plaquette penalty strength"},
        {"convergence_tau_max", "evolution time of each forward-backward run"},
        {"d_tau", "adiabatic time step"},
        {"dt", "Trotter step"},
        {"dt_list", "comma-separated descending Trotter steps for convergence"},
        {"excitation", "none, spin or charge"},
        {"extra_rishon", "auto, true or false"},
        {"format", "jsonl or csv"},
        {"fuse_blocks", "execute each Pauli rotation as one fused pass"},
        {"inner_steps", "Trotter steps per adiabatic plateau"},
        {"lx", "lattice width"},
        {"ly", "lattice height"},
        {"mu_tilde", "particle-number penalty strength"},
        {"n_target", "target particle number; -1 means one per site"},
        {"oracle_check", "compare evolution against the exact sector oracle"},
        {"outer_steps", "adiabatic plateaus"},
        {"output", "output path; empty writes to stdout"},
        {"record_every", "Trotter steps between trajectory records"},
        {"seed", "measurement RNG seed"},
        {"site_x", "injection site x"},
        {"site_y", "injection site y"},
        {"t", "hopping amplitude"},
        {"tau_max", "evolution time"},
    };
    return table;
}

std::string value_text(const RunConfig& c, const std::string& key) {
    if (key == "U") return format_double(c.model.U);
    if (key == "alpha_b") return format_double(c.model.alpha_b);
    if (key == "alpha_p") return format_double(c.model.alpha_p);
    if (key == "convergence_tau_max") return format_double(c.convergence_tau_max);
    if (key == "d_tau") return format_double(c.schedule.d_tau);
    if (key == "dt") return format_double(c.dt);
    if (key == "dt_list") return list_text(c.dt_list);
    if (key == "excitation") return excitation_text(c.excitation);
    if (key == "extra_rishon") return c.extra_rishon;
    if (key == "format") return c.format == OutputFormat::Csv ? "csv" : "jsonl";
    if (key == "fuse_blocks") return c.fuse_blocks ? "true" : "false";
    if (key == "inner_steps") return std::to_string(c.schedule.inner_steps);
    if (key == "lx") return std::to_string(c.lattice.lx);
    if (key == "ly") return std::to_string(c.lattice.ly);
    if (key == "mu_tilde") return format_double(c.model.mu_tilde);
    if (key == "n_target") return std::to_string(c.model.n_target);
    if (key == "oracle_check") return c.oracle_check ? "true" : "false";
    if (key == "outer_steps") return std::to_string(c.schedule.outer_steps);
    if (key == "output") return c.output;
    if (key == "record_every") return std::to_string(c.record_every);
    if (key == "seed") return std::to_string(c.seed);
    if (key == "site_x") return std::to_string(c.site.x);
    if (key == "site_y") return std::to_string(c.site.y);
    if (key == "t") return format_double(c.model.t);
    if (key == "tau_max") return format_double(c.tau_max);
    throw std::invalid_argument("unknown configuration key '" + key + "'");
}

}  // namespace

ModelParams RunConfig::resolved_model() const {
    ModelParams p = model;
    if (p.n_target < 0) {
        p.n_target = static_cast<int>(lattice.num_sites());
    }
    return p;
}

bool RunConfig::use_extra_rishon() const {
    if (extra_rishon == "auto") {
        return excitation == Excitation::Charge;
    }
    return extra_rishon == "true";
}

QubitLayout RunConfig::layout() const { return QubitLayout(lattice, use_extra_rishon()); }

void RunConfig::validate() const {
    lattice.validate();
    resolved_model().validate();
    schedule.validate();
    if (!(dt > 0.0) || !(tau_max >= 0.0) || !(convergence_tau_max >= 0.0)) {
        throw std::invalid_argument("dt must be positive and evolution times nonnegative");
    }
    if (record_every < 1) {
        throw std::invalid_argument("record_every must be at least 1");
    }
    if (extra_rishon == "false" && excitation == Excitation::Charge) {
        throw std::invalid_argument("charge injection needs extra_rishon=auto or true");
    }
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& e : key_table()) {
            k.emplace_back(e.key);
        }
        return k;
    }();
    return keys;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& raw) {
    std::string v = trim(raw);
    if (key == "U") {
        c.model.U = parse_double(key, v);
    } else if (key == "alpha_b") {
        c.model.alpha_b = parse_double(key, v);
    } else if (key == "alpha_p") {
        c.model.alpha_p = parse_double(key, v);
    } else if (key == "convergence_tau_max") {
        c.convergence_tau_max = parse_double(key, v);
    } else if (key == "d_tau") {
        c.schedule.d_tau = parse_double(key, v);
    } else if (key == "dt") {
        c.dt = parse_double(key, v);
    } else if (key == "dt_list") {
        c.dt_list = parse_list(key, v);
    } else if (key == "excitation") {
        if (v == "none") {
            c.excitation = Excitation::None;
        } else if (v == "spin") {
            c.excitation = Excitation::Spin;
        } else if (v == "charge") {
            c.excitation = Excitation::Charge;
        } else {
            throw std::invalid_argument("invalid value for excitation: '" + v + "' (expected none, spin or charge)");
        }
    } else if (key == "extra_rishon") {
        if (v != "auto" && v != "true" && v != "false") {
            throw std::invalid_argument("invalid value for extra_rishon: '" + v + "' (expected auto, true or false)");
        }
        c.extra_rishon = v;
    } else if (key == "format") {
        if (v == "jsonl") {
            c.format = OutputFormat::Jsonl;
        } else if (v == "csv") {
            c.format = OutputFormat::Csv;
        } else {
            throw std::invalid_argument("invalid value for format: '" + v + "' (expected jsonl or csv)");
        }
    } else if (key == "fuse_blocks") {
        c.fuse_blocks = parse_bool(key, v);
    } else if (key == "inner_steps") {
        c.schedule.inner_steps = parse_int32(key, v);
    } else if (key == "lx") {
        c.lattice.lx = parse_int32(key, v);
    } else if (key == "ly") {
        c.lattice.ly = parse_int32(key, v);
    } else if (key == "mu_tilde") {
        c.model.mu_tilde = parse_double(key, v);
    } else if (key == "n_target") {
        c.model.n_target = parse_int32(key, v);
    } else if (key == "oracle_check") {
        c.oracle_check = parse_bool(key, v);
    } else if (key == "outer_steps") {
        c.schedule.outer_steps = parse_int32(key, v);
    } else if (key == "output") {
        c.output = v;
    } else if (key == "record_every") {
        c.record_every = parse_int32(key, v);
    } else if (key == "seed") {
        long long s = parse_int(key, v);
        if (s < 0) {
            throw std::invalid_argument("seed must be nonnegative");
        }
        c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "site_x") {
        c.site.x = parse_int32(key, v);
    } else if (key == "site_y") {
        c.site.y = parse_int32(key, v);
    } else if (key == "t") {
        c.model.t = parse_double(key, v);
    } else if (key == "tau_max") {
        c.tau_max = parse_double(key, v);
    } else {
        throw std::invalid_argument("unknown configuration key '" + key + "'");
    }
}

void apply_config_text(RunConfig& c, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) {
            continue;
        }
        auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
        }
        apply_setting(c, trim(body.substr(0, eq)), body.substr(eq + 1));
    }
}

void apply_config_file(RunConfig& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read config file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    apply_config_text(c, buf.str());
}

std::string resolved_text(const RunConfig& c) {
    std::string out;
    for (const auto& k : config_keys()) {
        out += k + "=" + value_text(c, k) + "\n";
    }
    return out;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

namespace {

std::string config_hash(const RunConfig& c) { return "fnv1a64:" + hex64(fnv1a64(resolved_text(c))); }

void text_header(std::ostream& os, const std::string& command, const RunConfig& c) {
    os << "# defermion " << command << "\n";
    os << "# config_hash " << config_hash(c) << "\n";
    for (const auto& k : config_keys()) {
        os << "# config " << k << "=" << value_text(c, k) << "\n";
    }
}

json json_header(const std::string& command, const RunConfig& c) {
    json cfg = json::object();
    for (const auto& k : config_keys()) {
        cfg[k] = value_text(c, k);
    }
    return json{{"defermion", command}, {"config_hash", config_hash(c)}, {"config", cfg}};
}

std::string site_text(Site s) { return "(" + std::to_string(s.x) + "," + std::to_string(s.y) + ")"; }

void write_layout(std::ostream& os, const QubitLayout& l) {
    os << "# layout lattice=" << l.spec().to_string() << " qubits=" << l.num_qubits()
       << " extra_rishon=" << (l.has_extra_rishon() ? "true" : "false") << "\n";
    const auto& g = l.geometry();
    for (std::size_t j = 0; j < g.sites.size(); ++j) {
        os << "# site " << site_text(g.sites[j]) << " u=" << l.matter_qubit(j, Flavor::Up)
           << " d=" << l.matter_qubit(j, Flavor::Down) << "\n";
    }
    for (std::size_t k = 0; k < g.links.size(); ++k) {
        os << "# link " << site_text(g.links[k].from) << "-" << site_text(g.links[k].to())
           << " qubit=" << l.link_qubit(k) << "\n";
    }
    if (l.extra_rishon()) {
        os << "# extra_rishon qubit=" << *l.extra_rishon() << "\n";
    }
}

int cmd_encode(const RunConfig& c, std::ostream& os) {
    QubitLayout l = c.layout();
    EncodedHamiltonian h = build_hamiltonian(l, c.resolved_model(), true);
    text_header(os, "encode", c);
    write_layout(os, l);
    std::optional<TermKind> section;
    for (const auto& t : h.terms) {
        if (!section || *section != t.tag.kind) {
            section = t.tag.kind;
            os << "# terms " << to_string(t.tag.kind) << "\n";
        }
        os << format_double(t.coeff) << " " << t.op.to_string() << "\n";
    }
    StabilizerSet s = build_stabilizers(l);
    os << "# stabilizers vertex\n";
    for (const auto& v : s.vertex) {
        os << "1 " << v.to_string() << "\n";
    }
    os << "# stabilizers plaquette\n";
    for (const auto& p : s.plaquette) {
        os << "1 " << p.to_string() << "\n";
    }
    return kOk;
}

std::string dims_line(const LatticeSpec& spec) {
    HilbertDims d = hilbert_dims(spec);
    auto show = [](int log2) {
        return log2 < 63 ? std::to_string(std::uint64_t{1} << log2) : "2^" + std::to_string(log2);
    };
    return spec.to_string() + ": full " + show(d.full_log2) + ", physical " + show(d.physical_log2);
}

int cmd_dims(const RunConfig& c, std::ostream& os) {
    text_header(os, "dims", c);
    os << dims_line(c.lattice) << "\n";
    os << "qubits " << QubitLayout(c.lattice, false).num_qubits() << ", with extra rishon "
       << QubitLayout(c.lattice, true).num_qubits() << "\n";
    return kOk;
}

void write_weights(std::ostream& os, const WeightReport& w) {
    os << "hopping_single_species " << w.hopping_single_species << "\n";
    os << "hopping_spinful " << w.hopping_spinful << "\n";
    os << "onsite " << w.onsite << "\n";
    os << "vertex " << w.vertex_min << "-" << w.vertex_max << "\n";
    os << "plaquette " << w.plaquette << "\n";
    os << "stabilizer_single_species " << w.stabilizer_single_species << "\n";
    os << "parity " << w.parity_weight << "\n";
    os << "qubits " << w.qubits << "\n";
    os << "qubit_fermion_ratio " << format_double(w.qubit_fermion_ratio) << "\n";
    os << "qubit_fermion_ratio_single_species " << format_double(w.qubit_fermion_ratio_single_species) << "\n";
}

int cmd_weights(const RunConfig& c, std::ostream& os) {
    text_header(os, "weights", c);
    write_weights(os, weight_report(c.layout(), c.resolved_model()));
    return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& os) {
    QubitLayout plain(c.lattice, false);
    std::size_t sites = c.lattice.num_sites();
    FermionEdOptions fopts;
    DeformedEdOptions dopts;
    if (2 * sites > fopts.max_modes || plain.num_qubits() > dopts.max_qubits) {
        throw std::invalid_argument("verify: lattice " + c.lattice.to_string() +
                                    " exceeds the exact-diagonalization caps (16 modes, 14 qubits)");
    }
    text_header(os, "verify", c);
    bool all = true;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        all = all && ok;
        os << "check " << name << " " << (ok ? "PASS" : "FAIL") << " " << detail << "\n";
    };

    double worst = 0.0;
    int points = 0;
    for (double rho : {0.5, 1.0, 1.5}) {
        for (double r : {0.0, 2.0, 4.0, 8.0, 10.0}) {
            ModelParams p = c.resolved_model();
            p.U = r * p.t;
            p.n_target = static_cast<int>(std::llround(rho * static_cast<double>(sites)));
            double ef = fermionic_ed(c.lattice, p).ground_energy;
            double ed = deformed_ed(plain, p, DeformedMode::Projected).ground_energy;
            double rel = std::abs(ed - ef) / std::max(std::abs(ef), 1e-300);
            if (ef == 0.0 && ed == 0.0) {
                rel = 0.0;
            }
            worst = std::max(worst, rel);
            ++points;
        }
    }
    report("ed_equivalence", worst < kEdTolerance,
           "max relative dE " + format_double(worst) + " over " + std::to_string(points) + " points (tol 1e-10)");

    int bad = 0;
    for (bool extra : {false, true}) {
        QubitLayout l(c.lattice, extra);
        auto stabs = build_stabilizers(l).all();
        EncodedHamiltonian h = build_hamiltonian(l, c.resolved_model(), true);
        for (std::size_t i = 0; i < stabs.size(); ++i) {
            for (std::size_t j = i + 1; j < stabs.size(); ++j) {
                bad += !commutes(stabs[i], stabs[j]);
            }
            for (const auto& t : h.terms) {
                bad += !commutes(stabs[i], t.op);
            }
        }
    }
    report("stabilizer_commutation", bad == 0, std::to_string(bad) + " anticommuting pairs");

    WeightReport w = weight_report(c.layout(), c.resolved_model());
    report("weights", w.vertex_max <= 6 && w.plaquette <= 6,
           "hopping_single_species " + std::to_string(w.hopping_single_species) + ", hopping_spinful " +
               std::to_string(w.hopping_spinful) + ", stabilizer max " + std::to_string(std::max(w.vertex_max, w.plaquette)));

    std::size_t dim = layout_sector(plain).dim();
    std::uint64_t want = hilbert_dims(c.lattice).physical();
    report("hilbert_dims", dim == want,
           dims_line(c.lattice) + "; sector enumeration " + std::to_string(dim));
    os << "result " << (all ? "PASS" : "FAIL") << "\n";
    return all ? kOk : kVerifyFailed;
}

json record_json(const TrajectoryRecord& r) {
    return json{{"tau", r.tau},         {"sz", r.sz},
                {"charge", r.charge},   {"rishon", r.rishon},
                {"double_occupancy", r.double_occupancy},
                {"energy", r.energy},   {"stabilizers", r.stabilizers},
                {"norm", r.norm}};
}

double stabilizer_deviation(const TrajectoryRecord& r) {
    double d = 0.0;
    for (double s : r.stabilizers) {
        d = std::max(d, std::abs(s - 1.0));
    }
    return d;
}

std::optional<double> optional_peak(const Trajectory& tr, bool spin, std::size_t site) {
    return first_peak(tr.taus(), spin ? tr.sz(site) : tr.charge(site));
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string optional_text(const std::optional<double>& v) { return v ? format_double(*v) : "absent"; }

int cmd_evolve(const RunConfig& c, std::ostream& os, std::ostream& err) {
    QubitLayout l = c.layout();
    ModelParams p = c.resolved_model();
    if (!l.contains(c.site)) {
        throw std::invalid_argument("injection site " + site_text(c.site) + " outside lattice " + l.spec().to_string());
    }
    if (c.excitation != Excitation::None) {
        excitation_operator(l, c.excitation == Excitation::Spin ? ExcitationKind::Spin : ExcitationKind::Charge,
                            c.site);
    }
    if (l.num_qubits() > kWarnQubits) {
        err << "warning: " << l.num_qubits()
            << " qubits; dense statevector dynamics at this size is long-running\n";
    }
    RunOptions opts{c.fuse_blocks};
    StateVector state = prepare_initial_state(l, c.seed);
    fix_stabilizers(state, l, opts);
    adiabatic_ground_state(state, l, p, c.schedule, opts);
    if (c.excitation != Excitation::None) {
        inject_excitation(state, l, c.excitation == Excitation::Spin ? ExcitationKind::Spin : ExcitationKind::Charge,
                          c.site);
    }
    std::optional<Trajectory> exact;
    if (c.oracle_check) {
        SectorDynamics dyn(l, p);
        exact = dyn.evolve_and_record(dyn.from_full(state.amplitudes()), c.tau_max, c.dt * c.record_every);
    }
    Trajectory tr = evolve_and_record(state, l, build_hamiltonian(l, p, false), c.tau_max, c.dt, c.record_every, opts);

    std::vector<std::optional<double>> deviation(tr.records.size());
    if (exact) {
        for (std::size_t k = 0; k < tr.records.size(); ++k) {
            const auto& a = tr.records[k];
            for (const auto& b : exact->records) {
                if (std::abs(a.tau - b.tau) < 1e-9) {
                    double d = 0.0;
                    for (std::size_t j = 0; j < a.sz.size(); ++j) {
                        d = std::max({d, std::abs(a.sz[j] - b.sz[j]), std::abs(a.charge[j] - b.charge[j])});
                    }
                    deviation[k] = d;
                    break;
                }
            }
        }
    }
    std::size_t site = l.site_index(c.site);
    std::optional<double> peak_sz = optional_peak(tr, true, site);
    std::optional<double> peak_charge = optional_peak(tr, false, site);

    if (c.format == OutputFormat::Jsonl) {
        os << json_header("evolve", c).dump() << "\n";
        for (std::size_t k = 0; k < tr.records.size(); ++k) {
            json r = record_json(tr.records[k]);
            if (exact) {
                r["oracle_deviation"] = optional_json(deviation[k]);
            }
            os << r.dump() << "\n";
        }
        json summary{{"excitation", excitation_text(c.excitation)},
                     {"site", {c.site.x, c.site.y}},
                     {"first_peak_sz", optional_json(peak_sz)},
                     {"first_peak_charge", optional_json(peak_charge)}};
        os << json{{"summary", summary}}.dump() << "\n";
        return kOk;
    }
    text_header(os, "evolve", c);
    std::size_t n_sites = l.geometry().sites.size();
    os << "tau";
    for (std::size_t j = 0; j < n_sites; ++j) {
        os << ",sz_" << j;
    }
    for (std::size_t j = 0; j < n_sites; ++j) {
        os << ",charge_" << j;
    }
    for (std::size_t k = 0; k < tr.records.front().rishon.size(); ++k) {
        os << ",rishon_" << k;
    }
    os << ",double_occupancy,energy,norm,stabilizer_deviation";
    if (exact) {
        os << ",oracle_deviation";
    }
    os << "\n";
    for (std::size_t k = 0; k < tr.records.size(); ++k) {
        const auto& r = tr.records[k];
        os << format_double(r.tau);
        for (double v : r.sz) {
            os << "," << format_double(v);
        }
        for (double v : r.charge) {
            os << "," << format_double(v);
        }
        for (double v : r.rishon) {
            os << "," << format_double(v);
        }
        os << "," << format_double(r.double_occupancy) << "," << format_double(r.energy) << ","
           << format_double(r.norm) << "," << format_double(stabilizer_deviation(r));
        if (exact) {
            os << "," << (deviation[k] ? format_double(*deviation[k]) : "");
        }
        os << "\n";
    }
    os << "# summary excitation=" << excitation_text(c.excitation) << " site=" << site_text(c.site)
       << " first_peak_sz=" << optional_text(peak_sz) << " first_peak_charge=" << optional_text(peak_charge) << "\n";
    return kOk;
}

int cmd_convergence(const RunConfig& c, std::ostream& os) {
    RunOptions opts{c.fuse_blocks};
    ConvergenceResult r =
        trotter_convergence(c.layout(), c.resolved_model(), c.dt_list, c.convergence_tau_max, opts, c.seed);
    if (c.format == OutputFormat::Jsonl) {
        os << json_header("convergence", c).dump() << "\n";
        for (const auto& row : r.rows) {
            os << json{{"dt", row.dt}, {"error", row.error}}.dump() << "\n";
        }
        os << json{{"slope", optional_json(r.slope)}}.dump() << "\n";
        return kOk;
    }
    text_header(os, "convergence", c);
    os << "dt,error\n";
    for (const auto& row : r.rows) {
        os << format_double(row.dt) << "," << format_double(row.error) << "\n";
    }
    os << "# slope=" << optional_text(r.slope) << "\n";
    return kOk;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gauge-defermionized Hubbard model: encoding, verification and circuit dynamics", "defermion"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "flat key = value configuration file; flags override its values");
    std::map<std::string, std::string> flags;
    for (const auto& k : key_table()) {
        app.add_option(std::string("--") + k.key, flags[k.key], k.help);
    }
    struct Command {
        const char* name;
        const char* help;
    };
    const Command commands[] = {
        {"encode", "dump the encoded Hamiltonian and stabilizers"},
        {"verify", "check the encoding against exact diagonalization"},
        {"evolve", "prepare, fix, adiabatically evolve, inject and record a trajectory"},
        {"convergence", "forward-backward Trotter error against dt"},
        {"dims", "Hilbert-space dimensions"},
        {"weights", "Pauli weight report"},
    };
    for (const auto& cmd : commands) {
        app.add_subcommand(cmd.name, cmd.help);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }

    std::string command = app.get_subcommands().front()->get_name();
    std::ostringstream buffer;
    int code = kOk;
    RunConfig config;
    try {
        if (!config_path.empty()) {
            apply_config_file(config, config_path);
        }
        for (const auto& k : key_table()) {
            if (app.get_option(std::string("--") + k.key)->count() > 0) {
                apply_setting(config, k.key, flags[k.key]);
            }
        }
        config.validate();
        if (command == "encode") {
            code = cmd_encode(config, buffer);
        } else if (command == "verify") {
            code = cmd_verify(config, buffer);
        } else if (command == "evolve") {
            code = cmd_evolve(config, buffer, err);
        } else if (command == "convergence") {
            code = cmd_convergence(config, buffer);
        } else if (command == "dims") {
            code = cmd_dims(config, buffer);
        } else {
            code = cmd_weights(config, buffer);
        }
    } catch (const ProtocolError& e) {
        err << "protocol failure: " << e.what() << "\n";
        return kProtocolFailure;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::overflow_error& e) {
        err << "invalid input: " << e.what() << "\n";
        return kInvalidInput;
    }
    if (config.output.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(config.output, std::ios::binary);
        if (!file) {
            err << "invalid input: cannot write " << config.output << "\n";
            return kInvalidInput;
        }
        file << buffer.str();
    }
    if (code == kVerifyFailed) {
        err << "verification failed\n";
    }
    return code;
}

}  // namespace defermion::cli
