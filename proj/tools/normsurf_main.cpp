// normsurf: exact intersection theory on combinatorial presentations of
// proper normal surfaces. Every subcommand loads a model, runs one library
// operation, and prints either a human summary or (--json) a machine document
// with keys command/verdict/witness/trace/assumptions. Exit codes: 0 on a
// positive verdict, 1 on a negative or Unknown mathematical verdict, 2 on bad
// input.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "normsurf/cones.hpp"
#include "normsurf/contract.hpp"
#include "normsurf/model_io.hpp"
#include "normsurf/models.hpp"
#include "normsurf/mumford.hpp"
#include "normsurf/surface.hpp"

using json = nlohmann::ordered_json;
using namespace normsurf;
using contract::ContractionVerdict;

namespace {

struct Output {
    json doc;
    bool machine = false;
    int exit_code = 0;
    std::vector<std::string> human;

    Output(const std::string& command, bool machine_mode) : machine(machine_mode) {
        doc["command"] = command;
        doc["verdict"] = nullptr;
        doc["witness"] = nullptr;
        doc["trace"] = json::array();
        doc["assumptions"] = json::array();
    }
    void emit() const {
        if (machine) {
            std::cout << doc.dump(2) << "\n";
        } else {
            for (const auto& line : human) std::cout << line << "\n";
        }
    }
};

json divisor_json(const Divisor& d) {
    json j = json::object();
    for (const auto& [n, c] : d.coeffs) j[n] = c.str();
    return j;
}

json qvec_json(const QVec& v) {
    json j = json::array();
    for (const auto& x : v) j.push_back(x.str());
    return j;
}

json certificate_json(const LPCertificate& c) {
    json j;
    j["status"] = c.feasible() ? "feasible" : "infeasible";
    j[c.feasible() ? "witness" : "farkas_dual"] = qvec_json(c.witness);
    return j;
}

json inertia_json(const Inertia& in) {
    return json{{"n_plus", in.n_plus}, {"n_zero", in.n_zero}, {"n_minus", in.n_minus}};
}

Divisor parse_div_spec(const std::string& spec) {
    Divisor d;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        std::string part = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
        pos = comma == std::string::npos ? spec.size() : comma + 1;
        if (part.empty()) continue;
        std::size_t eqp = part.find('=');
        if (eqp == std::string::npos)
            throw ParseError("divisor term '" + part + "' is not name=coeff");
        auto c = Rat::parse(part.substr(eqp + 1));
        if (!c) throw ParseError("divisor coefficient '" + part.substr(eqp + 1) +
                                 "' is not a rational p/q");
        d.set(part.substr(0, eqp), *c);
    }
    return d;
}

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t comma = csv.find(',', pos);
        std::string part = csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
        pos = comma == std::string::npos ? csv.size() : comma + 1;
        if (!part.empty()) out.push_back(part);
    }
    return out;
}

NormalSurfaceModel load_model(const std::string& path) {
    NormalSurfaceModel m = model_from_file(path);
    ValidationReport rep = validate(m);
    if (!rep.ok())
        throw ContractViolation("model rejected: " + rep.errors.front().message + " [" +
                                rep.errors.front().code + "]");
    return m;
}

std::string status_name(ContractionVerdict::Status s) {
    switch (s) {
    case ContractionVerdict::Status::CertifiedContractible: return "CertifiedContractible";
    case ContractionVerdict::Status::CertifiedByRule: return "CertifiedByRule";
    case ContractionVerdict::Status::Unknown: return "Unknown";
    }
    return "Unknown";
}

void fill_verdict(Output& out, const ContractionVerdict& v) {
    out.doc["verdict"] = status_name(v.status);
    json w;
    if (v.certificate) w["certificate"] = divisor_json(*v.certificate);
    if (v.lp_certificate) w["complementary_system"] = certificate_json(*v.lp_certificate);
    out.doc["witness"] = w.is_null() ? json() : w;
    for (const auto& t : v.rule_trace) out.doc["trace"].push_back(t);
    out.doc["assumptions"].push_back("verdict is relative to the declared curves");
    out.exit_code = v.status == ContractionVerdict::Status::Unknown ? 1 : 0;
    out.human.push_back("status: " + status_name(v.status));
    if (v.certificate) out.human.push_back("certificate: " + v.certificate->str());
    for (const auto& t : v.rule_trace) out.human.push_back("  " + t);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact intersection theory on normal surface presentations"};
    app.require_subcommand(1);

    std::string model_path;
    bool machine = false;
    std::string div_spec, div_file;
    std::vector<std::string> role_divs;      // role/spec pairs
    std::vector<std::string> role_div_files; // role/path pairs
    std::string curve_csv;
    long unibranched = 1;

    auto add_common = [&](CLI::App* sub, bool needs_divisor, bool needs_roles,
                          bool needs_curve) {
        sub->add_option("--model", model_path, "model JSON file")->required();
        sub->add_flag("--json", machine, "machine-readable output");
        if (needs_divisor) {
            sub->add_option("--div", div_spec, "divisor as name=coeff,name=coeff");
            sub->add_option("--div-file", div_file, "divisor JSON file");
        }
        if (needs_roles) {
            sub->add_option("--div", role_divs,
                            "role and divisor spec, e.g. --div A \"D=1\"")
                ->type_size(2);
            sub->add_option("--div-file", role_div_files, "role and divisor JSON file")
                ->type_size(2);
        }
        if (needs_curve)
            sub->add_option("--curve", curve_csv, "comma-separated prime divisor names")
                ->required();
    };

    CLI::App* c_validate = app.add_subcommand("validate", "check model invariants");
    add_common(c_validate, false, false, false);
    CLI::App* c_pair = app.add_subcommand("pair", "rational intersection number");
    add_common(c_pair, false, true, false);
    c_pair->add_option("--unibranched-multiplicity", unibranched,
                       "length of the local ring at the generic point (default 1)");
    CLI::App* c_pullback = app.add_subcommand("pullback", "pull a divisor back to the resolution");
    add_common(c_pullback, true, false, false);
    CLI::App* c_cartier = app.add_subcommand("cartier-index", "least integral multiple and certification");
    add_common(c_cartier, true, false, false);
    CLI::App* c_negdef = app.add_subcommand("negdef", "negative definiteness of a curve set");
    add_common(c_negdef, false, false, true);
    CLI::App* c_antiample = app.add_subcommand("anti-ample", "effective divisor anti-ample on a configuration");
    add_common(c_antiample, false, false, true);
    CLI::App* c_ample = app.add_subcommand("ample-on-itself", "divisor with full support and positive degrees on it");
    add_common(c_ample, false, false, true);
    CLI::App* c_almost = app.add_subcommand("almost-affine", "is the complement of the curve set almost affine");
    add_common(c_almost, false, false, true);
    CLI::App* c_contract = app.add_subcommand("contract", "complementary-curve contractibility certificate");
    add_common(c_contract, false, false, true);
    CLI::App* c_criteria = app.add_subcommand("criteria", "sufficient-criteria rule engine");
    add_common(c_criteria, false, false, true);
    CLI::App* c_extremal = app.add_subcommand("extremal", "extremal-face test for the cone of curves");
    add_common(c_extremal, false, false, true);
    CLI::App* c_support = app.add_subcommand("support-function", "separating divisor for a negative definite face");
    add_common(c_support, false, false, true);
    CLI::App* c_hodge = app.add_subcommand("hodge", "signature of the pairing on declared curves");
    add_common(c_hodge, false, false, false);
    CLI::App* c_zariski = app.add_subcommand("zariski", "numerical Zariski-type decomposition");
    add_common(c_zariski, true, false, false);
    CLI::App* c_classify = app.add_subcommand("classify-model", "dimension and properness of the divisorial model");
    add_common(c_classify, false, true, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    auto get_single_divisor = [&](Level level) {
        if (!div_spec.empty() && !div_file.empty())
            throw ParseError("give --div or --div-file, not both");
        if (!div_spec.empty()) {
            Divisor d = parse_div_spec(div_spec);
            d.level = level;
            return d;
        }
        if (!div_file.empty()) return divisor_from_file(div_file, level);
        throw ParseError("missing --div or --div-file");
    };
    auto get_role_divisor = [&](const std::string& role, Level level) {
        for (std::size_t i = 0; i + 1 < role_divs.size(); i += 2)
            if (role_divs[i] == role) {
                Divisor d = parse_div_spec(role_divs[i + 1]);
                d.level = level;
                return d;
            }
        for (std::size_t i = 0; i + 1 < role_div_files.size(); i += 2)
            if (role_div_files[i] == role) return divisor_from_file(role_div_files[i + 1], level);
        throw ParseError("missing divisor for role " + role);
    };
    auto has_role = [&](const std::string& role) {
        for (std::size_t i = 0; i + 1 < role_divs.size(); i += 2)
            if (role_divs[i] == role) return true;
        for (std::size_t i = 0; i + 1 < role_div_files.size(); i += 2)
            if (role_div_files[i] == role) return true;
        return false;
    };

    try {
        if (c_validate->parsed()) {
            Output out("validate", machine);
            NormalSurfaceModel m = model_from_file(model_path);
            ValidationReport rep = validate(m);
            out.doc["verdict"] = rep.ok() ? "valid" : "invalid";
            json w;
            w["errors"] = json::array();
            for (const auto& e : rep.errors)
                w["errors"].push_back(json{{"code", e.code}, {"message", e.message}});
            w["warnings"] = json::array();
            for (const auto& e : rep.warnings)
                w["warnings"].push_back(json{{"code", e.code}, {"message", e.message}});
            out.doc["witness"] = w;
            out.exit_code = rep.ok() ? 0 : 2;
            out.human.push_back(rep.ok() ? "valid" : "invalid");
            for (const auto& e : rep.errors)
                out.human.push_back("error [" + e.code + "]: " + e.message);
            for (const auto& e : rep.warnings)
                out.human.push_back("warning [" + e.code + "]: " + e.message);
            out.emit();
            return out.exit_code;
        }

        NormalSurfaceModel m = load_model(model_path);

        if (c_pair->parsed()) {
            Output out("pair", machine);
            Divisor a = get_role_divisor("A", Level::Downstairs);
            Divisor b = get_role_divisor("B", Level::Downstairs);
            Rat v = unibranched == 1 ? mumford::pair(m, a, b)
                                     : mumford::unibranched_pair(m, unibranched, a, b);
            out.doc["verdict"] = v.str();
            out.human.push_back(v.str());
            out.emit();
            return 0;
        }
        if (c_pullback->parsed()) {
            Output out("pullback", machine);
            mumford::PullbackResult r = mumford::pullback(m, get_single_divisor(Level::Downstairs));
            out.doc["verdict"] = "ok";
            json w;
            w["upstairs"] = divisor_json(r.upstairs);
            w["per_point"] = json::object();
            for (const auto& [id, q] : r.per_point) w["per_point"][id] = qvec_json(q);
            out.doc["witness"] = w;
            out.human.push_back("pullback: " + r.upstairs.str());
            for (const auto& [id, q] : r.per_point) {
                std::string line = "  " + id + ": [";
                for (std::size_t i = 0; i < q.size(); ++i)
                    line += (i ? ", " : "") + q[i].str();
                out.human.push_back(line + "]");
            }
            out.emit();
            return 0;
        }
        if (c_cartier->parsed()) {
            Output out("cartier-index", machine);
            mumford::CartierReport r = mumford::cartier_index(m, get_single_divisor(Level::Downstairs));
            out.doc["verdict"] = json{{"index", r.index.get_str()}, {"certified", r.certified}};
            json w = json::object();
            for (const auto& [id, den] : r.point_denominators) w[id] = den.get_str();
            out.doc["witness"] = json{{"point_denominators", w}};
            for (const auto& t : r.assumption_trail) out.doc["assumptions"].push_back(t);
            out.exit_code = r.certified ? 0 : 1;
            out.human.push_back("index: " + r.index.get_str());
            out.human.push_back(std::string("certified: ") + (r.certified ? "yes" : "no"));
            for (const auto& t : r.assumption_trail) out.human.push_back("  " + t);
            out.emit();
            return out.exit_code;
        }
        if (c_negdef->parsed()) {
            Output out("negdef", machine);
            auto idx = resolve_ids(m, split_names(curve_csv));
            Inertia in = ldlt_inertia(mumford::pairing_matrix(m, idx));
            bool v = in.negative_definite();
            out.doc["verdict"] = v;
            out.doc["witness"] = inertia_json(in);
            out.exit_code = v ? 0 : 1;
            out.human.push_back(v ? "negative definite" : "not negative definite");
            out.emit();
            return out.exit_code;
        }
        if (c_antiample->parsed()) {
            Output out("anti-ample", machine);
            Divisor d = contract::anti_ample_on(m, split_names(curve_csv));
            out.doc["verdict"] = "ok";
            out.doc["witness"] = divisor_json(d);
            out.human.push_back(d.str());
            out.emit();
            return 0;
        }
        if (c_ample->parsed()) {
            Output out("ample-on-itself", machine);
            auto d = contract::ample_on_itself(m, split_names(curve_csv));
            if (d) {
                out.doc["verdict"] = "ok";
                out.doc["witness"] = divisor_json(*d);
                out.human.push_back(d->str());
            } else {
                out.doc["verdict"] = "no-seed";
                out.exit_code = 1;
                out.human.push_back("no seed: the configuration carries no divisor of "
                                    "positive square");
            }
            out.emit();
            return out.exit_code;
        }
        if (c_almost->parsed()) {
            Output out("almost-affine", machine);
            auto curves = split_names(curve_csv);
            bool v = contract::is_almost_affine_complement(m, curves);
            out.doc["verdict"] = v;
            json w;
            w["components"] = adjacency_components(m, curves).size();
            w["inertia"] = inertia_json(
                ldlt_inertia(mumford::pairing_matrix(m, resolve_ids(m, curves))));
            out.doc["witness"] = w;
            out.exit_code = v ? 0 : 1;
            out.human.push_back(v ? "almost affine complement" : "not almost affine");
            out.emit();
            return out.exit_code;
        }
        if (c_contract->parsed()) {
            Output out("contract", machine);
            fill_verdict(out, contract::contraction_certificate(m, split_names(curve_csv)));
            out.emit();
            return out.exit_code;
        }
        if (c_criteria->parsed()) {
            Output out("criteria", machine);
            fill_verdict(out, contract::criteria_engine(m, split_names(curve_csv)));
            out.emit();
            return out.exit_code;
        }
        if (c_extremal->parsed()) {
            Output out("extremal", machine);
            cones::FaceReport r = cones::is_extremal_negdef_face(m, split_names(curve_csv));
            const char* kind = r.kind == cones::FaceKind::NegDefCurveFace ? "NegDefCurveFace"
                               : r.kind == cones::FaceKind::BoundaryIsotropicFace
                                   ? "BoundaryIsotropicFace"
                                   : "NotExtremal";
            out.doc["verdict"] = kind;
            json w;
            if (r.support_function) w["support_function"] = divisor_json(*r.support_function);
            if (r.isotropic_class) w["isotropic_class"] = divisor_json(*r.isotropic_class);
            if (r.finiteness_check) w["finiteness_check"] = certificate_json(*r.finiteness_check);
            out.doc["witness"] = w.is_null() ? json() : w;
            for (const auto& n : r.notes) out.doc["trace"].push_back(n);
            out.exit_code = r.kind == cones::FaceKind::NegDefCurveFace ? 0 : 1;
            out.human.push_back(kind);
            for (const auto& n : r.notes) out.human.push_back("  " + n);
            if (r.support_function)
                out.human.push_back("support function: " + r.support_function->str());
            out.emit();
            return out.exit_code;
        }
        if (c_support->parsed()) {
            Output out("support-function", machine);
            cones::SupportFunctionResult r = cones::support_function(m, split_names(curve_csv));
            if (r.divisor) {
                out.doc["verdict"] = "ok";
                out.doc["witness"] = json{{"divisor", divisor_json(*r.divisor)},
                                          {"system", certificate_json(r.certificate)}};
                out.human.push_back(r.divisor->str());
            } else {
                out.doc["verdict"] = "infeasible";
                out.doc["witness"] = json{{"system", certificate_json(r.certificate)}};
                out.exit_code = 1;
                out.human.push_back("infeasible over the declared curves");
            }
            for (const auto& n : r.notes) out.doc["trace"].push_back(n);
            out.emit();
            return out.exit_code;
        }
        if (c_hodge->parsed()) {
            Output out("hodge", machine);
            cones::HodgeReport r = cones::hodge_check(m);
            out.doc["verdict"] = r.consistent ? "consistent" : "inconsistent";
            out.doc["witness"] = inertia_json(r.inertia);
            out.exit_code = r.consistent ? 0 : 1;
            out.human.push_back(std::string(r.consistent ? "consistent" : "inconsistent") +
                                " (n_plus=" + std::to_string(r.inertia.n_plus) +
                                ", n_zero=" + std::to_string(r.inertia.n_zero) +
                                ", n_minus=" + std::to_string(r.inertia.n_minus) + ")");
            out.emit();
            return out.exit_code;
        }
        if (c_zariski->parsed()) {
            Output out("zariski", machine);
            auto z = models::zariski_decompose(m, get_single_divisor(Level::Downstairs));
            if (z) {
                out.doc["verdict"] = "ok";
                out.doc["witness"] = json{{"positive_part", divisor_json(z->positive_part)},
                                          {"negative_part", divisor_json(z->negative_part)}};
                out.human.push_back("P = " + z->positive_part.str());
                out.human.push_back("N = " + z->negative_part.str());
            } else {
                out.doc["verdict"] = "no-decomposition";
                out.exit_code = 1;
                out.human.push_back("no decomposition: divisor is not pseudo-effective "
                                    "relative to the declared curves");
            }
            out.emit();
            return out.exit_code;
        }
        if (c_classify->parsed()) {
            Output out("classify-model", machine);
            models::MovableFixedData data;
            data.m = get_role_divisor("M", Level::Downstairs);
            data.f = has_role("F") ? get_role_divisor("F", Level::Downstairs) : Divisor{};
            data.d = has_role("D") ? get_role_divisor("D", Level::Downstairs)
                                   : data.m + data.f;
            models::ModelClass mc = models::classify_model(m, data);
            const char* kind = mc.kind == models::ModelKind::AffineHull ? "AffineHull"
                               : mc.kind == models::ModelKind::Curve    ? "Curve"
                               : mc.kind == models::ModelKind::Surface  ? "Surface"
                                                                        : "Empty";
            const char* proper = mc.proper == models::Properness::Yes              ? "Yes"
                                 : mc.proper == models::Properness::No             ? "No"
                                 : mc.proper == models::Properness::UncertifiedYes ? "UncertifiedYes"
                                                                                   : "NotApplicable";
            out.doc["verdict"] = json{{"kind", kind}, {"proper", proper}};
            for (const auto& a : mc.assumptions) out.doc["assumptions"].push_back(a);
            out.human.push_back(std::string("kind: ") + kind);
            out.human.push_back(std::string("proper: ") + proper);
            for (const auto& a : mc.assumptions) out.human.push_back("  " + a);
            out.emit();
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ContractViolation& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
