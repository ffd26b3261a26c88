#include "chirospec/config.hpp"

#include "chirospec/errors.hpp"
#include "chirospec/presets.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace chirospec {

std::vector<double> IdlerSpec::values() const {
    return range ? presets::stepped_axis(min, max, step) : list;
}

std::vector<double> AxisSpec::values() const { return presets::linear_axis(min, max, count); }

namespace {

int line_of(const YAML::Node& node) { return node.Mark().is_null() ? -1 : node.Mark().line + 1; }

void require_map(const YAML::Node& node, std::string_view where) {
    if (!node.IsMap()) throw ParseError(std::string(where) + ": expected a mapping", line_of(node));
}

void reject_unknown(const YAML::Node& node, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
    require_map(node, where);
    const std::set<std::string_view> keys(allowed);
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!keys.contains(key)) {
            throw ParseError("unknown key '" + std::string(where) + "." + key + "'", line_of(kv.first));
        }
    }
}

double read_number(const YAML::Node& node, std::string_view field) {
    if (!node.IsScalar()) throw ParseError(std::string(field) + ": expected a number", line_of(node));
    double v = 0.0;
    try {
        v = node.as<double>();
    } catch (const YAML::BadConversion&) {
        throw ParseError(std::string(field) + ": expected a number", line_of(node));
    }
    if (!std::isfinite(v)) throw ValidationError(std::string(field) + " must be finite");
    return v;
}

void read_into(const YAML::Node& parent, const char* key, std::string_view field, double& out) {
    if (const auto n = parent[key]) out = read_number(n, field);
}

std::size_t read_count(const YAML::Node& node, std::string_view field) {
    const double v = read_number(node, field);
    if (v < 1.0 || v != std::floor(v) || v > 1e7) {
        throw ValidationError(std::string(field) + " must be a positive integer");
    }
    return static_cast<std::size_t>(v);
}

// Scalar for real couplings, [re, im] for complex ones.
cplx read_coupling(const YAML::Node& node, std::string_view field) {
    if (node.IsSequence()) {
        if (node.size() != 2) throw ParseError(std::string(field) + ": expected [re, im]", line_of(node));
        return {read_number(node[0], field), read_number(node[1], field)};
    }
    return {read_number(node, field), 0.0};
}

JsaKind read_kind(const YAML::Node& node) {
    const auto s = node.as<std::string>();
    if (s == "uncorrelated") return JsaKind::UncorrelatedGaussian;
    if (s == "entangled") return JsaKind::EntangledSpdc;
    if (s == "zero_bandwidth") return JsaKind::ZeroBandwidthCorrelated;
    throw ParseError("probe.kind: expected uncorrelated | entangled | zero_bandwidth", line_of(node));
}

std::string_view kind_name(JsaKind k) {
    switch (k) {
        case JsaKind::UncorrelatedGaussian: return "uncorrelated";
        case JsaKind::EntangledSpdc: return "entangled";
        case JsaKind::ZeroBandwidthCorrelated: return "zero_bandwidth";
    }
    return "uncorrelated";
}

std::string_view curves_name(CurveOutput c) {
    switch (c) {
        case CurveOutput::All: return "all";
        case CurveOutput::Distinguishable: return "distinguishable";
        case CurveOutput::None: return "none";
    }
    return "all";
}

void parse_drive(const YAML::Node& node, DriveConfig& d) {
    reject_unknown(node, "drive", {"omega21", "omega31", "omega32", "delta21", "delta31"});
    if (const auto n = node["omega21"]) d.omega21 = read_coupling(n, "drive.omega21");
    if (const auto n = node["omega31"]) d.omega31 = read_coupling(n, "drive.omega31");
    if (const auto n = node["omega32"]) d.omega32 = read_coupling(n, "drive.omega32");
    read_into(node, "delta21", "drive.delta21", d.delta21);
    read_into(node, "delta31", "drive.delta31", d.delta31);
}

BiphotonAmplitude parse_probe(const YAML::Node& node) {
    reject_unknown(node, "probe", {"kind", "omega_sc", "omega_lc", "sigma", "omega_p", "sigma_p",
                                   "t_s", "t_l", "envelope_center", "envelope_width", "scale"});
    const JsaKind kind = node["kind"] ? read_kind(node["kind"]) : JsaKind::UncorrelatedGaussian;

    double omega_sc = 0.0, omega_lc = 0.0, sigma = 1.0, sigma_p = 1.0, t_s = 0.0, t_l = 0.0;
    read_into(node, "omega_sc", "probe.omega_sc", omega_sc);
    read_into(node, "omega_lc", "probe.omega_lc", omega_lc);
    read_into(node, "sigma", "probe.sigma", sigma);
    read_into(node, "sigma_p", "probe.sigma_p", sigma_p);
    read_into(node, "t_s", "probe.t_s", t_s);
    read_into(node, "t_l", "probe.t_l", t_l);

    BiphotonAmplitude a;
    switch (kind) {
        case JsaKind::UncorrelatedGaussian:
            a = BiphotonAmplitude::uncorrelated(omega_sc, omega_lc, sigma);
            break;
        case JsaKind::EntangledSpdc:
            a = BiphotonAmplitude::entangled(omega_sc, omega_lc, sigma_p, t_s, t_l);
            break;
        case JsaKind::ZeroBandwidthCorrelated:
            a = BiphotonAmplitude::zero_bandwidth(omega_sc + omega_lc, {omega_sc, sigma});
            break;
    }
    // Keep every field so configs round-trip whatever the kind.
    a.omegaSc = omega_sc;
    a.omegaLc = omega_lc;
    a.sigma = sigma;
    a.sigmaP = sigma_p;
    a.tS = t_s;
    a.tL = t_l;
    read_into(node, "omega_p", "probe.omega_p", a.omegaP);
    read_into(node, "envelope_center", "probe.envelope_center", a.envelope.center);
    read_into(node, "envelope_width", "probe.envelope_width", a.envelope.width);
    read_into(node, "scale", "probe.scale", a.scale);
    return a;
}

AxisSpec parse_axis(const YAML::Node& node, std::string_view where) {
    reject_unknown(node, where, {"min", "max", "count"});
    for (const char* key : {"min", "max", "count"}) {
        if (!node[key]) throw ParseError(std::string(where) + "." + key + " is required", line_of(node));
    }
    AxisSpec a;
    a.min = read_number(node["min"], std::string(where) + ".min");
    a.max = read_number(node["max"], std::string(where) + ".max");
    a.count = read_count(node["count"], std::string(where) + ".count");
    if (a.max < a.min) throw ValidationError(std::string(where) + ": max >= min");
    if (a.count == 1 && a.max != a.min) throw ValidationError(std::string(where) + ": count >= 2 for a range");
    return a;
}

IdlerSpec parse_idler(const YAML::Node& node) {
    IdlerSpec s;
    if (node.IsScalar()) {
        s.list = {read_number(node, "idler")};
    } else if (node.IsSequence()) {
        for (const auto& v : node) s.list.push_back(read_number(v, "idler[]"));
        if (s.list.empty()) throw ValidationError("idler: list must be nonempty");
    } else {
        reject_unknown(node, "idler", {"min", "max", "step"});
        for (const char* key : {"min", "max", "step"}) {
            if (!node[key]) throw ParseError(std::string("idler.") + key + " is required", line_of(node));
        }
        s.range = true;
        s.min = read_number(node["min"], "idler.min");
        s.max = read_number(node["max"], "idler.max");
        s.step = read_number(node["step"], "idler.step");
        if (s.step <= 0.0) throw ValidationError("idler.step > 0");
        if (s.max < s.min) throw ValidationError("idler: max >= min");
    }
    return s;
}

void validate(const ExperimentConfig& cfg) {
    try {
        cfg.noise.validate();
        cfg.probe.validate();
        (void)cfg.scan.grid();
    } catch (const InvalidParameter& e) {
        throw ValidationError(e.what());
    }
    if (cfg.idler && cfg.sweep) throw ValidationError("exactly one of idler or sweep may be given");
    if (cfg.sweep && cfg.sweep->t0.min < 0.0) throw ValidationError("sweep.t0.min >= 0");
    const auto& a = cfg.analysis;
    if (!(a.extremumThreshold > 0.0 && a.extremumThreshold < 1.0)) {
        throw ValidationError("0 < analysis.extremum_threshold < 1");
    }
    if (!(a.metricThreshold > 0.0 && a.metricThreshold <= 1.0)) {
        throw ValidationError("0 < analysis.metric_threshold <= 1");
    }
    if (cfg.output.dir.empty()) throw ValidationError("output.dir must be nonempty");
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ParseError(e.msg, e.mark.line + 1);
    }

    ExperimentConfig cfg;
    if (root.IsNull()) {
        validate(cfg);
        return cfg;
    }
    try {
        reject_unknown(root, "config", {"drive", "noise", "probe", "scan", "idler", "sweep", "analysis", "output"});

        if (const auto n = root["drive"]) parse_drive(n, cfg.drive);
        if (const auto n = root["noise"]) {
            reject_unknown(n, "noise", {"gamma"});
            read_into(n, "gamma", "noise.gamma", cfg.noise.gamma);
        }
        if (const auto n = root["probe"]; n && !n.IsNull()) cfg.probe = parse_probe(n);
        if (const auto n = root["scan"]) {
            reject_unknown(n, "scan", {"center", "half_width", "step"});
            read_into(n, "center", "scan.center", cfg.scan.center);
            read_into(n, "half_width", "scan.half_width", cfg.scan.halfWidth);
            read_into(n, "step", "scan.step", cfg.scan.step);
        }
        if (const auto n = root["idler"]) cfg.idler = parse_idler(n);
        if (const auto n = root["sweep"]) {
            reject_unknown(n, "sweep", {"t0", "omega_l"});
            if (!n["t0"] || !n["omega_l"]) throw ParseError("sweep needs t0 and omega_l", line_of(n));
            cfg.sweep = SweepSpec{parse_axis(n["t0"], "sweep.t0"), parse_axis(n["omega_l"], "sweep.omega_l")};
        }
        if (const auto n = root["analysis"]) {
            reject_unknown(n, "analysis", {"extremum_threshold", "metric_threshold"});
            read_into(n, "extremum_threshold", "analysis.extremum_threshold", cfg.analysis.extremumThreshold);
            read_into(n, "metric_threshold", "analysis.metric_threshold", cfg.analysis.metricThreshold);
        }
        if (const auto n = root["output"]) {
            reject_unknown(n, "output", {"dir", "curves"});
            if (const auto d = n["dir"]) cfg.output.dir = d.as<std::string>();
            if (const auto c = n["curves"]) {
                const auto s = c.as<std::string>();
                if (s == "all") cfg.output.curves = CurveOutput::All;
                else if (s == "distinguishable") cfg.output.curves = CurveOutput::Distinguishable;
                else if (s == "none") cfg.output.curves = CurveOutput::None;
                else throw ParseError("output.curves: expected all | distinguishable | none", line_of(c));
            }
        }
    } catch (const YAML::Exception& e) {
        throw ParseError(e.msg, e.mark.is_null() ? -1 : e.mark.line + 1);
    }

    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace {

void emit_coupling(YAML::Emitter& out, const char* key, cplx w) {
    out << YAML::Key << key << YAML::Value;
    if (w.imag() == 0.0) {
        out << w.real();
    } else {
        out << YAML::Flow << YAML::BeginSeq << w.real() << w.imag() << YAML::EndSeq;
    }
}

void emit_axis(YAML::Emitter& out, const char* key, const AxisSpec& a) {
    out << YAML::Key << key << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "min" << YAML::Value << a.min;
    out << YAML::Key << "max" << YAML::Value << a.max;
    out << YAML::Key << "count" << YAML::Value << a.count;
    out << YAML::EndMap;
}

}  // namespace

std::string serialize_config(const ExperimentConfig& cfg) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;

    out << YAML::Key << "drive" << YAML::Value << YAML::BeginMap;
    emit_coupling(out, "omega21", cfg.drive.omega21);
    emit_coupling(out, "omega31", cfg.drive.omega31);
    emit_coupling(out, "omega32", cfg.drive.omega32);
    out << YAML::Key << "delta21" << YAML::Value << cfg.drive.delta21;
    out << YAML::Key << "delta31" << YAML::Value << cfg.drive.delta31;
    out << YAML::EndMap;

    out << YAML::Key << "noise" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "gamma" << YAML::Value << cfg.noise.gamma;
    out << YAML::EndMap;

    const auto& p = cfg.probe;
    out << YAML::Key << "probe" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value << std::string(kind_name(p.kind));
    out << YAML::Key << "omega_sc" << YAML::Value << p.omegaSc;
    out << YAML::Key << "omega_lc" << YAML::Value << p.omegaLc;
    out << YAML::Key << "sigma" << YAML::Value << p.sigma;
    out << YAML::Key << "omega_p" << YAML::Value << p.omegaP;
    out << YAML::Key << "sigma_p" << YAML::Value << p.sigmaP;
    out << YAML::Key << "t_s" << YAML::Value << p.tS;
    out << YAML::Key << "t_l" << YAML::Value << p.tL;
    out << YAML::Key << "envelope_center" << YAML::Value << p.envelope.center;
    out << YAML::Key << "envelope_width" << YAML::Value << p.envelope.width;
    out << YAML::Key << "scale" << YAML::Value << p.scale;
    out << YAML::EndMap;

    out << YAML::Key << "scan" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "center" << YAML::Value << cfg.scan.center;
    out << YAML::Key << "half_width" << YAML::Value << cfg.scan.halfWidth;
    out << YAML::Key << "step" << YAML::Value << cfg.scan.step;
    out << YAML::EndMap;

    if (cfg.idler) {
        out << YAML::Key << "idler" << YAML::Value;
        if (cfg.idler->range) {
            out << YAML::BeginMap;
            out << YAML::Key << "min" << YAML::Value << cfg.idler->min;
            out << YAML::Key << "max" << YAML::Value << cfg.idler->max;
            out << YAML::Key << "step" << YAML::Value << cfg.idler->step;
            out << YAML::EndMap;
        } else {
            out << YAML::Flow << YAML::BeginSeq;
            for (double v : cfg.idler->list) out << v;
            out << YAML::EndSeq;
        }
    }
    if (cfg.sweep) {
        out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
        emit_axis(out, "t0", cfg.sweep->t0);
        emit_axis(out, "omega_l", cfg.sweep->omegaL);
        out << YAML::EndMap;
    }

    out << YAML::Key << "analysis" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "extremum_threshold" << YAML::Value << cfg.analysis.extremumThreshold;
    out << YAML::Key << "metric_threshold" << YAML::Value << cfg.analysis.metricThreshold;
    out << YAML::EndMap;

    out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "dir" << YAML::Value << cfg.output.dir;
    out << YAML::Key << "curves" << YAML::Value << std::string(curves_name(cfg.output.curves));
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace chirospec
