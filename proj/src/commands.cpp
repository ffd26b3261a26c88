#include "chirospec/commands.hpp"

#include "chirospec/analysis.hpp"
#include "chirospec/errors.hpp"
#include "chirospec/parallel.hpp"

#include <CLI11.hpp>
#include <boost/crc.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace chirospec {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9e", v);
    return buf;
}

std::uint32_t crc32(std::string_view bytes) {
    boost::crc_32_type crc;
    crc.process_bytes(bytes.data(), bytes.size());
    return crc.checksum();
}

namespace {

std::string index_tag(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%05zu", i);
    return buf;
}

std::string curve_csv(const SpectrumCurve& curve) {
    std::string s = "delta_s_bar,P_c\n";
    s.reserve(curve.points.size() * 34 + s.size());
    for (const auto& p : curve.points) {
        s += format_number(p.deltaSBar);
        s += ',';
        s += format_number(p.value);
        s += '\n';
    }
    return s;
}

std::string_view probe_name(JsaKind k) {
    switch (k) {
        case JsaKind::UncorrelatedGaussian: return "uncorrelated";
        case JsaKind::EntangledSpdc: return "entangled";
        case JsaKind::ZeroBandwidthCorrelated: return "zero_bandwidth";
    }
    return "?";
}

void kv(std::string& s, std::string_view key, std::string_view value) {
    s += key;
    s += " = ";
    s += value;
    s += '\n';
}

// The analytic zero-bandwidth limit has no scan axis: one value per idler frequency.
RunOutput zero_bandwidth_outputs(const ExperimentConfig& cfg, const std::vector<double>& idlers) {
    const auto right = dressed_states(cfg.drive.with_chirality(Chirality::Right));
    const auto left = dressed_states(cfg.drive.with_chirality(Chirality::Left));

    RunOutput run;
    std::string csv = "omega_l_bar,delta_s_bar,P_c_L,P_c_R\n";
    std::string manifest;
    kv(manifest, "tool", "chirospec");
    kv(manifest, "version", kVersion);
    kv(manifest, "command", "spectrum");
    kv(manifest, "probe", probe_name(cfg.probe.kind));
    kv(manifest, "idler_count", std::to_string(idlers.size()));
    std::size_t opposite = 0;
    for (std::size_t i = 0; i < idlers.size(); ++i) {
        const double wl = idlers[i];
        const double pl = zero_bandwidth_pinned(left, cfg.probe, cfg.noise, wl);
        const double pr = zero_bandwidth_pinned(right, cfg.probe, cfg.noise, wl);
        csv += format_number(wl) + ',' + format_number(pinned_signal_detuning(cfg.probe, wl)) + ',' +
               format_number(pl) + ',' + format_number(pr) + '\n';
        const bool differ = (pl > 0.0) != (pr > 0.0) && pl != 0.0 && pr != 0.0;
        if (differ) ++opposite;
        const auto tag = index_tag(i);
        kv(manifest, "omega_l_bar." + tag, format_number(wl));
        kv(manifest, "opposite_sign." + tag, differ ? "true" : "false");
    }
    kv(manifest, "opposite_sign_count", std::to_string(opposite));
    run.distinguishableCount = opposite;
    run.files.push_back({"pinned.csv", std::move(csv)});
    run.files.push_back({"manifest.txt", std::move(manifest)});
    run.files.push_back({"config.yaml", serialize_config(cfg)});
    return run;
}

}  // namespace

RunOutput spectrum_outputs(const ExperimentConfig& cfg, unsigned threads) {
    if (!cfg.idler) throw ValidationError("spectrum: the config needs an idler section");
    const auto idlers = cfg.idler->values();
    if (idlers.empty()) throw ValidationError("spectrum: idler range is empty");
    if (cfg.probe.kind == JsaKind::ZeroBandwidthCorrelated) return zero_bandwidth_outputs(cfg, idlers);

    const auto scan = cfg.scan.grid();
    std::vector<std::pair<SpectrumCurve, SpectrumCurve>> curves(idlers.size());
    std::vector<Discrimination> verdicts(idlers.size());
    parallel_for(idlers.size(), threads, [&](std::size_t i) {
        curves[i] = transmission_curve_pair(cfg.drive, cfg.probe, cfg.noise, idlers[i], scan);
        verdicts[i] = discriminability(curves[i].first, curves[i].second, cfg.analysis);
    });

    RunOutput run;
    std::set<SignaturePair> pairs;
    std::string body;
    for (std::size_t i = 0; i < idlers.size(); ++i) {
        const auto& d = verdicts[i];
        const auto tag = index_tag(i);
        kv(body, "omega_l_bar." + tag, format_number(idlers[i]));
        kv(body, "signature_L." + tag, d.left.str());
        kv(body, "signature_R." + tag, d.right.str());
        kv(body, "metric." + tag, format_number(d.metric));
        kv(body, "distinguishable." + tag, d.distinguishable ? "true" : "false");
        if (d.distinguishable) {
            ++run.distinguishableCount;
            pairs.insert({d.left, d.right});
        }
        const bool write = cfg.output.curves == CurveOutput::All ||
                           (cfg.output.curves == CurveOutput::Distinguishable && d.distinguishable);
        if (write) {
            run.files.push_back({"curves/curve_" + tag + "_L.csv", curve_csv(curves[i].first)});
            run.files.push_back({"curves/curve_" + tag + "_R.csv", curve_csv(curves[i].second)});
        }
    }
    run.distinctSignaturePairs = pairs.size();

    std::string manifest;
    kv(manifest, "tool", "chirospec");
    kv(manifest, "version", kVersion);
    kv(manifest, "command", "spectrum");
    kv(manifest, "probe", probe_name(cfg.probe.kind));
    kv(manifest, "scan_points", std::to_string(scan.size()));
    kv(manifest, "idler_count", std::to_string(idlers.size()));
    kv(manifest, "distinguishable_count", std::to_string(run.distinguishableCount));
    kv(manifest, "distinct_signature_pairs", std::to_string(run.distinctSignaturePairs));
    manifest += body;
    run.files.push_back({"manifest.txt", std::move(manifest)});
    run.files.push_back({"config.yaml", serialize_config(cfg)});
    return run;
}

RunOutput regime_map_outputs(const ExperimentConfig& cfg, unsigned threads) {
    if (!cfg.sweep) throw ValidationError("regime-map: the config needs a sweep section");
    if (cfg.probe.kind != JsaKind::EntangledSpdc) {
        throw ValidationError("regime-map: probe.kind must be entangled");
    }
    const auto t0 = cfg.sweep->t0.values();
    const auto wl = cfg.sweep->omegaL.values();
    const auto map = regime_map(cfg.drive, cfg.probe, cfg.noise, t0, wl, cfg.scan.grid(), cfg.analysis, threads);

    RunOutput run;
    std::string csv = "t0,omega_l_bar,label\n";
    for (std::size_t r = 0; r < map.rows(); ++r) {
        for (std::size_t c = 0; c < map.cols(); ++c) {
            csv += format_number(map.t0Axis[r]) + ',' + format_number(map.omegaLAxis[c]) + ',' +
                   std::to_string(map.label(r, c)) + '\n';
            if (map.label(r, c) != 0) ++run.distinguishableCount;
        }
    }
    std::string legend = "label,signature_L,signature_R\n";
    for (std::size_t k = 0; k < map.legend.size(); ++k) {
        legend += std::to_string(k + 1) + ',' + map.legend[k].first.str() + ',' + map.legend[k].second.str() + '\n';
    }
    run.distinctSignaturePairs = map.distinct_nonzero_labels();

    std::string manifest;
    kv(manifest, "tool", "chirospec");
    kv(manifest, "version", kVersion);
    kv(manifest, "command", "regime-map");
    kv(manifest, "rows", std::to_string(map.rows()));
    kv(manifest, "cols", std::to_string(map.cols()));
    kv(manifest, "distinct_labels", std::to_string(map.distinct_nonzero_labels()));
    kv(manifest, "labelled_cells", std::to_string(run.distinguishableCount));
    kv(manifest, "regions", std::to_string(label_regions(map).size()));

    run.files.push_back({"regime_map.csv", std::move(csv)});
    run.files.push_back({"legend.csv", std::move(legend)});
    run.files.push_back({"manifest.txt", std::move(manifest)});
    run.files.push_back({"config.yaml", serialize_config(cfg)});
    return run;
}

namespace {

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

void write_outputs(const std::filesystem::path& dir, const RunOutput& run, double wall_seconds) {
    std::string record;
    kv(record, "tool", "chirospec");
    kv(record, "version", kVersion);
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.3f", wall_seconds);
    kv(record, "wall_seconds", wall);
    for (const auto& f : run.files) {
        write_file(dir / f.name, f.content);
        char sum[16];
        std::snprintf(sum, sizeof sum, "%08x", static_cast<unsigned>(crc32(f.content)));
        kv(record, "crc32." + f.name, sum);
    }
    write_file(dir / "run_record.txt", record);
}

void print_dressed_report(const ExperimentConfig& cfg, std::ostream& out) {
    const auto right = dressed_states(cfg.drive.with_chirality(Chirality::Right));
    const auto left = dressed_states(cfg.drive.with_chirality(Chirality::Left));
    for (const auto* d : {&right, &left}) {
        const auto tag = std::string(to_string(d->chirality));
        const auto w = d->weights();
        out << "lambda." << tag << " =";
        for (double l : d->lambdas) out << ' ' << format_number(l);
        out << "\neta1_sq." << tag << " =";
        for (double x : w) out << ' ' << format_number(x);
        out << "\ntop_lambda." << tag << " = " << format_number(d->lambdas[d->dominant_index()]) << '\n';
    }
    const double ll = left.lambdas[left.dominant_index()];
    const double lr = right.lambdas[right.dominant_index()];
    const auto window = discrimination_window(ll, lr, cfg.noise.gamma);
    out << "window.intervals =";
    if (window.empty()) out << " none";
    for (const auto& iv : window.intervals) out << " (" << format_number(iv.lo) << ", " << format_number(iv.hi) << ')';
    out << "\nwindow.measure = " << format_number(window.measure()) << '\n';
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"chirospec: chiral coincidence spectroscopy with entangled photon pairs"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    unsigned threads = default_thread_count();

    auto* spectrum = app.add_subcommand("spectrum", "transmission spectra for each idler frequency");
    auto* regime = app.add_subcommand("regime-map", "label (T0, omega_l) cells by enantiomer signature pair");
    auto* dressed = app.add_subcommand("dressed", "print dressed energies and the sign window");
    for (auto* sub : {spectrum, regime}) {
        sub->add_option("-c,--config", config_path, "experiment file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
        sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    }
    dressed->add_option("-c,--config", config_path, "experiment file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        out << kVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "chirospec: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        const ExperimentConfig cfg = load_config(config_path);
        if (*dressed) {
            print_dressed_report(cfg, out);
            return kExitOk;
        }
        const RunOutput run = *spectrum ? spectrum_outputs(cfg, threads) : regime_map_outputs(cfg, threads);
        const std::filesystem::path dir = out_dir.empty() ? cfg.output.dir : out_dir;
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_outputs(dir, run, wall);
        out << "wrote " << run.files.size() + 1 << " files to " << dir.string() << '\n';
        return kExitOk;
    } catch (const IoError& e) {
        err << "chirospec: io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const NonFiniteResult& e) {
        err << "chirospec: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        err << "chirospec: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "chirospec: " << e.what() << '\n';
        return kExitUnexpected;
    }
}

}  // namespace chirospec
