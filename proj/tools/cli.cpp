#include "cli.hpp"

#include "htriv/catalog.hpp"
#include "htriv/cohomline.hpp"
#include "htriv/errors.hpp"
#include "htriv/plsearch.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cassert>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace htriv::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string fan_path;
    std::string catalog_name;
    std::string format = "text";
    std::size_t cap = kDefaultLatticeCap;
    std::size_t delta_cap = kDefaultDeltaCap;
    unsigned threads = 1;
    std::uint64_t seed = ValidationOptions{}.seed;
    std::string coeffs;
    std::string box;
    std::string r_range = "-5:5";
};

// ---------------------------------------------------------------------------
// Argument parsing helpers

long parse_long(const std::string& s, const std::string& what) {
    long v = 0;
    const char* b = s.data();
    const char* e = b + s.size();
    if (!s.empty() && *b == '+') ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e || b == e) throw UsageError(what + ": \"" + s + "\" is not an integer");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

IntVector parse_coeffs(const std::string& s, std::size_t n) {
    if (s.empty()) throw UsageError("--coeffs is required");
    IntVector out;
    for (const auto& part : split(s, ',')) out.emplace_back(parse_long(part, "--coeffs"));
    if (out.size() != n)
        throw UsageError("--coeffs has " + std::to_string(out.size()) + " entries, fan has " + std::to_string(n) +
                         " rays");
    return out;
}

std::pair<long, long> parse_range(const std::string& s, const std::string& what) {
    auto colon = s.find(':', 1);
    if (colon == std::string::npos) throw UsageError(what + ": expected lo:hi, got \"" + s + "\"");
    long lo = parse_long(s.substr(0, colon), what);
    long hi = parse_long(s.substr(colon + 1), what);
    if (lo > hi) throw UsageError(what + ": empty range " + s);
    return {lo, hi};
}

ClassBox parse_box(const std::string& s, std::size_t free_rank) {
    ClassBox box;
    if (s.empty()) throw UsageError("--box is required");
    for (const auto& part : split(s, ',')) box.push_back(parse_range(part, "--box"));
    // A single range applies to every free coordinate.
    if (box.size() == 1 && free_rank > 1) box.assign(free_rank, box.front());
    if (box.size() != free_rank)
        throw UsageError("--box has " + std::to_string(box.size()) + " ranges, Pic has free rank " +
                         std::to_string(free_rank));
    return box;
}

// ---------------------------------------------------------------------------
// JSON helpers

Json to_json(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

template <typename T>
Json to_json(const std::vector<T>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

Json index_set_json(RayMask mask) {
    Json a = Json::array();
    for (std::size_t i : mask_indices(mask)) a.push_back(i + 1);
    return a;
}

Json class_json(const LineBundleClass& c) {
    Json j;
    j["raw"] = to_json(c.raw);
    j["canonical"]["free"] = to_json(c.canonical.free);
    j["canonical"]["torsion"] = to_json(c.canonical.torsion);
    return j;
}

std::string vec_text(const IntVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

std::string vec_text(const std::vector<std::uint64_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string class_text(const LineBundleClass& c) {
    std::string s = "raw " + vec_text(c.raw) + " free " + vec_text(c.canonical.free);
    if (!c.canonical.torsion.empty()) s += " torsion " + vec_text(c.canonical.torsion);
    return s;
}

// ---------------------------------------------------------------------------
// Commands

struct Context {
    const RunConfig& cfg;
    const StackyFan& fan;
    std::ostream& out;
    bool json;

    Json header(const std::string& command) const {
        Json j;
        j["command"] = command;
        j["fingerprint"] = fan.fingerprint();
        return j;
    }
    void emit(const Json& j) const { out << j.dump(2) << "\n"; }
    DeltaFamily delta() const { return compute_delta(fan, cfg.delta_cap, cfg.threads); }
};

void cmd_validate(const Context& c) {
    auto pairs = collinear_pairs(c.fan);
    if (c.json) {
        Json j = c.header("validate");
        j["valid"] = true;
        j["rank"] = c.fan.rank();
        j["num_rays"] = c.fan.num_rays();
        j["num_max_cones"] = c.fan.max_cones().size();
        Json p = Json::array();
        for (auto [a, b] : pairs) p.push_back({a + 1, b + 1});
        j["collinear_pairs"] = p;
        c.emit(j);
        return;
    }
    c.out << "valid fan: rank " << c.fan.rank() << ", " << c.fan.num_rays() << " rays, " << c.fan.max_cones().size()
          << " maximal cones, " << pairs.size() << " collinear pair(s)\n";
    c.out << "fingerprint " << c.fan.fingerprint() << "\n";
}

void cmd_pic(const Context& c) {
    PicStructure pic(c.fan);
    if (c.json) {
        Json j = c.header("pic");
        j["free_rank"] = pic.free_rank();
        j["torsion"] = to_json(pic.torsion());
        Json rel = Json::array();
        for (std::size_t r = 0; r < pic.relations().rows(); ++r) rel.push_back(to_json(pic.relations().row(r)));
        j["free_coordinates"] = rel;
        c.emit(j);
        return;
    }
    c.out << "free rank " << pic.free_rank() << "\n";
    c.out << "torsion " << (pic.torsion().empty() ? std::string("none") : vec_text(pic.torsion())) << "\n";
    for (std::size_t r = 0; r < pic.relations().rows(); ++r)
        c.out << "free coordinate " << r + 1 << ": " << vec_text(pic.relations().row(r)) << "\n";
}

void cmd_delta(const Context& c) {
    DeltaFamily d = c.delta();
    if (c.json) {
        Json j = c.header("delta");
        j["count"] = d.members.size();
        Json m = Json::array();
        for (const auto& member : d.members) {
            Json e;
            e["index_set"] = index_set_json(member.index_set);
            e["betti"] = member.betti.ranks;
            m.push_back(e);
        }
        j["members"] = m;
        c.emit(j);
        return;
    }
    c.out << d.members.size() << " index sets with non-acyclic C_I\n";
    for (const auto& member : d.members) {
        c.out << format_index_set(member.index_set) << " reduced betti (from degree -1):";
        for (auto r : member.betti.ranks) c.out << " " << r;
        c.out << "\n";
    }
}

void cmd_cohomology(const Context& c) {
    IntVector a = parse_coeffs(c.cfg.coeffs, c.fan.num_rays());
    PicStructure pic(c.fan);
    DeltaFamily d = c.delta();
    CohomologyVector h = cohomology(c.fan, d, a, c.cfg.cap);
#ifndef NDEBUG
    assert(h.is_zero() == is_h_trivial(c.fan, d, a, c.cfg.cap));
#endif
    LineBundleClass cls = class_of(pic, a);
    if (c.json) {
        Json j = c.header("cohomology");
        j["class"] = class_json(cls);
        j["cohomology"] = h.h;
        j["h_trivial"] = h.is_zero();
        c.emit(j);
        return;
    }
    c.out << "h = " << vec_text(h.h) << "\n";
    c.out << "class " << class_text(cls) << "\n";
}

void cmd_h_trivial(const Context& c) {
    IntVector a = parse_coeffs(c.cfg.coeffs, c.fan.num_rays());
    PicStructure pic(c.fan);
    DeltaFamily d = c.delta();
    HTrivialResult r = h_triviality(c.fan, d, a, c.cfg.cap);
#ifndef NDEBUG
    assert(r.h_trivial == cohomology(c.fan, d, a, c.cfg.cap).is_zero());
#endif
    if (c.json) {
        Json j = c.header("h-trivial");
        j["class"] = class_json(class_of(pic, a));
        j["h_trivial"] = r.h_trivial;
        j["violating_index_set"] = r.violating ? index_set_json(*r.violating) : Json(nullptr);
        j["witness"] = r.violating ? to_json(r.witness) : Json(nullptr);
        c.emit(j);
        return;
    }
    c.out << (r.h_trivial ? "true" : "false") << "\n";
    if (r.violating)
        c.out << "lattice point f = " << vec_text(r.witness) << " in the forbidden set of I = "
              << format_index_set(*r.violating) << "\n";
}

void cmd_scan(const Context& c) {
    PicStructure pic(c.fan);
    ClassBox box = parse_box(c.cfg.box, pic.free_rank());
    DeltaFamily d = c.delta();
    auto found = scan_h_trivial(c.fan, pic, d, box, c.cfg.threads, c.cfg.cap);
    std::size_t scanned = 1;
    for (const auto& [lo, hi] : box) scanned *= static_cast<std::size_t>(hi - lo + 1);
    for (const auto& t : pic.torsion()) scanned *= t.get_ui();
    if (c.json) {
        Json j = c.header("scan");
        Json b = Json::array();
        for (const auto& [lo, hi] : box) b.push_back({lo, hi});
        j["box"] = b;
        j["scanned"] = scanned;
        j["count"] = found.size();
        Json cl = Json::array();
        for (const auto& x : found) cl.push_back(class_json(x));
        j["h_trivial_classes"] = cl;
        c.emit(j);
        return;
    }
    c.out << found.size() << " H-trivial classes among " << scanned << " scanned\n";
    for (const auto& x : found) c.out << class_text(x) << "\n";
}

Json psi_json(const StackyFan& fan, const DegeneratePsi& p) {
    Json j;
    j["ray"] = p.ray + 1;
    j["psi"] = to_json(p.psi);
    j["kernel_dim"] = degenerate_space(fan, p.ray).dim;
    j["lambda_dim"] = lambda_polytope(fan, PLFunction::from_integers(p.psi)).dim;
    return j;
}

void cmd_find_psi(const Context& c) {
    auto p = find_degenerate_psi(c.fan);
    if (c.json) {
        Json j = c.header("find-psi");
        j["found"] = p.has_value();
        j["result"] = p ? psi_json(c.fan, *p) : Json(nullptr);
        c.emit(j);
        return;
    }
    if (!p) {
        c.out << "no degenerate psi\n";
        return;
    }
    c.out << "degenerate psi at ray " << p->ray + 1 << ": " << vec_text(p->psi) << "\n";
    c.out << "dim Lambda_psi = " << lambda_polytope(c.fan, PLFunction::from_integers(p->psi)).dim << "\n";
}

void cmd_family(const Context& c) {
    auto [lo, hi] = parse_range(c.cfg.r_range, "--r");
    auto p = find_degenerate_psi(c.fan);
    if (!p) throw ComputationError("no degenerate psi on this fan, so there is no family to build");
    PicStructure pic(c.fan);
    DeltaFamily d = c.delta();
    std::vector<FamilyCheck> checks;
    std::set<CanonicalClass> seen;
    for (long r = lo; r <= hi; ++r) {
        FamilyCheck fc{r, family_class(c.fan, pic, p->ray, p->psi, r), false};
        fc.h_trivial = is_h_trivial(c.fan, d, fc.cls.raw, c.cfg.cap);
        seen.insert(fc.cls.canonical);
        checks.push_back(std::move(fc));
    }
    const bool distinct = seen.size() == checks.size();
    if (c.json) {
        Json j = c.header("family");
        j["psi"] = psi_json(c.fan, *p);
        Json m = Json::array();
        for (const auto& fc : checks) m.push_back({{"r", fc.r}, {"class", class_json(fc.cls)}, {"h_trivial", fc.h_trivial}});
        j["members"] = m;
        j["pairwise_distinct"] = distinct;
        c.emit(j);
        return;
    }
    c.out << "family from psi " << vec_text(p->psi) << " at ray " << p->ray + 1 << "\n";
    for (const auto& fc : checks)
        c.out << "r = " << fc.r << ": " << class_text(fc.cls) << " h-trivial " << (fc.h_trivial ? "yes" : "no") << "\n";
    c.out << "classes pairwise distinct: " << (distinct ? "yes" : "no") << "\n";
}

void cmd_report(const Context& c) {
    PicStructure pic(c.fan);
    DeltaFamily d = c.delta();
    ReportOptions opt;
    if (!c.cfg.box.empty()) opt.search_box = parse_box(c.cfg.box, pic.free_rank());
    std::tie(opt.r_lo, opt.r_hi) = parse_range(c.cfg.r_range, "--r");
    opt.cap = c.cfg.cap;
    CriterionReport r = criterion_report(c.fan, pic, d, opt);
    if (c.json) {
        Json j = c.header("report");
        j["rank"] = c.fan.rank();
        j["num_rays"] = c.fan.num_rays();
        j["collinear_pair_count"] = r.collinear_pair_count;
        j["degenerate_psi"] = r.degenerate_psi ? psi_json(c.fan, *r.degenerate_psi) : Json(nullptr);
        j["psi_outside_all_interiors"] = r.psi_outside_all_interiors ? Json(*r.psi_outside_all_interiors) : Json(nullptr);
        Json outside;
        outside["searched"] = r.outside_searched;
        outside["witness"] = r.outside_witness ? class_json(*r.outside_witness) : Json(nullptr);
        j["nonzero_class_outside_all_interiors"] = outside;
        Json fam = Json::array();
        for (const auto& fc : r.family_checks)
            fam.push_back({{"r", fc.r}, {"class", class_json(fc.cls)}, {"h_trivial", fc.h_trivial}});
        j["family_checks"] = fam;
        j["family_all_h_trivial"] = r.family_all_h_trivial;
        j["family_pairwise_distinct"] = r.family_pairwise_distinct;
        j["verdict"] = to_string(r.verdict);
        j["reason"] = r.reason;
        c.emit(j);
        return;
    }
    c.out << "verdict " << to_string(r.verdict) << "\n";
    c.out << "reason: " << r.reason << "\n";
    c.out << "collinear pairs: " << r.collinear_pair_count << "\n";
    if (r.degenerate_psi)
        c.out << "degenerate psi at ray " << r.degenerate_psi->ray + 1 << ": " << vec_text(r.degenerate_psi->psi)
              << "\n";
    else
        c.out << "degenerate psi: none\n";
    if (r.outside_witness)
        c.out << "nonzero class outside all Z_I interiors: " << class_text(*r.outside_witness) << "\n";
    else
        c.out << "nonzero class outside all Z_I interiors: none in " << r.outside_searched << " searched\n";
    if (!r.family_checks.empty())
        c.out << "family r = " << r.family_checks.front().r << ".." << r.family_checks.back().r << ": all h-trivial "
              << (r.family_all_h_trivial ? "yes" : "no") << ", pairwise distinct "
              << (r.family_pairwise_distinct ? "yes" : "no") << "\n";
}

std::string fan_json(const StackyFan& fan) {
    // One ray or cone per line keeps hand-edited fan files readable.
    std::ostringstream os;
    os << "{\n  \"rank\": " << fan.rank() << ",\n  \"rays\": [\n";
    for (std::size_t i = 0; i < fan.num_rays(); ++i)
        os << "    " << to_json(fan.ray(i)).dump() << (i + 1 < fan.num_rays() ? "," : "") << "\n";
    os << "  ],\n  \"max_cones\": [\n";
    const auto& cones = fan.max_cones();
    for (std::size_t k = 0; k < cones.size(); ++k)
        os << "    " << Json(cones[k]).dump() << (k + 1 < cones.size() ? "," : "") << "\n";
    os << "  ]\n}\n";
    return os.str();
}

void cmd_catalog(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.catalog_name.empty()) {
        out << fan_json(catalog_fan(cfg.catalog_name));
        return;
    }
    if (cfg.format == "json") {
        Json a = Json::array();
        for (const auto& e : catalog())
            a.push_back({{"name", e.name}, {"description", e.description}, {"fingerprint", e.fan.fingerprint()}});
        out << a.dump(2) << "\n";
        return;
    }
    for (const auto& e : catalog()) out << e.name << "  " << e.description << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read fan file \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"H-triviality of line bundles on toric stacks", "htriv"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--fan", cfg.fan_path, "fan JSON file (0-based ray indices)");
    app.add_option("--catalog", cfg.catalog_name, "built-in fan by name (see `htriv catalog`)");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--cap", cfg.cap, "lattice-point candidate cap")->check(CLI::PositiveNumber);
    app.add_option("--delta-cap", cfg.delta_cap, "largest ray count for exhaustive Delta")->check(CLI::PositiveNumber);
    app.add_option("--threads", cfg.threads, "worker threads for Delta and scans")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "seed for the coverage spot check");

    auto* validate = app.add_subcommand("validate", "check the fan");
    auto* pic = app.add_subcommand("pic", "Picard group structure");
    auto* delta = app.add_subcommand("delta", "index sets I with non-acyclic C_I");
    auto* coh = app.add_subcommand("cohomology", "cohomology dimensions of a line bundle");
    coh->add_option("--coeffs", cfg.coeffs, "a_1,...,a_n in ray order")->required()->allow_extra_args(false);
    auto* htr = app.add_subcommand("h-trivial", "decide H-triviality of a line bundle");
    htr->add_option("--coeffs", cfg.coeffs, "a_1,...,a_n in ray order")->required()->allow_extra_args(false);
    auto* scan = app.add_subcommand("scan", "H-trivial classes in a box of free coordinates");
    scan->add_option("--box", cfg.box, "lo:hi[,lo:hi...]")->required();
    auto* find = app.add_subcommand("find-psi", "search for a degenerate piecewise-linear psi");
    auto* family = app.add_subcommand("family", "infinite H-trivial family from psi");
    family->add_option("--r", cfg.r_range, "lo:hi");
    auto* report = app.add_subcommand("report", "criterion report");
    report->add_option("--box", cfg.box, "search box for a class outside all interiors");
    report->add_option("--r", cfg.r_range, "lo:hi for the family checks");
    auto* cat = app.add_subcommand("catalog", "list built-in fans, or print one with --catalog NAME");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (cat->parsed()) {
            cmd_catalog(cfg, out);
            return kOk;
        }
        if (cfg.fan_path.empty() == cfg.catalog_name.empty())
            throw UsageError("give exactly one of --fan PATH or --catalog NAME");
        ValidationOptions vopt;
        vopt.seed = cfg.seed;
        std::optional<StackyFan> loaded;
        if (!cfg.fan_path.empty()) loaded.emplace(load_fan(read_file(cfg.fan_path), vopt));
        const StackyFan& fan = loaded ? *loaded : catalog_fan(cfg.catalog_name);
        Context ctx{cfg, fan, out, cfg.format == "json"};
        if (validate->parsed()) cmd_validate(ctx);
        else if (pic->parsed()) cmd_pic(ctx);
        else if (delta->parsed()) cmd_delta(ctx);
        else if (coh->parsed()) cmd_cohomology(ctx);
        else if (htr->parsed()) cmd_h_trivial(ctx);
        else if (scan->parsed()) cmd_scan(ctx);
        else if (find->parsed()) cmd_find_psi(ctx);
        else if (family->parsed()) cmd_family(ctx);
        else if (report->parsed()) cmd_report(ctx);
        return kOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kValidation;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const ComputationError& e) {
        err << "computation error: " << e.what() << "\n";
        return kComputation;
    }
}

}  // namespace htriv::cli
