// mcbyte — mask-cued multi-object tracking pipeline.
//
// Subcommands: track (detections -> MOT results), eval (CLEAR-MOT/IDF1),
// synth (generate a scenario directory), ablate (variant sweep over
// scenario directories). Exit codes: 0 ok, 1 usage, 2 bad input file.

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcbyte/io.hpp"
#include "mcbyte/metrics.hpp"
#include "mcbyte/synth.hpp"
#include "mcbyte/tracker.hpp"
#include "mcbyte/variant.hpp"

namespace fs = std::filesystem;

namespace {

struct TrackArgs {
    std::string det, masks, warps, config, out;
};

struct EvalArgs {
    std::string gt, res, report_out;
};

struct SynthArgs {
    std::string preset, spec, out;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

struct AblateArgs {
    std::string scenario_dir, variants, report_out;
};

std::shared_ptr<mcbyte::MaskProvider> make_mask_provider(const std::string& path) {
    if (path.empty()) return std::make_shared<mcbyte::NullMaskProvider>();
    return std::make_shared<mcbyte::FileMaskProvider>(mcbyte::read_mask_stream_file(path));
}

std::unique_ptr<mcbyte::WarpProvider> make_warp_provider(const std::string& path) {
    if (path.empty()) return std::make_unique<mcbyte::IdentityWarpProvider>();
    return std::make_unique<mcbyte::FileWarpProvider>(mcbyte::read_warp_file(path));
}

int run_track(const TrackArgs& a) {
    mcbyte::TrackerConfig cfg;
    if (!a.config.empty()) cfg = mcbyte::read_config_file(a.config);
    const auto dets = mcbyte::read_mot_file(a.det);
    const auto warps = make_warp_provider(a.warps);
    const auto frames = mcbyte::frames_from_dets(dets, *warps);
    const auto outputs = mcbyte::run_sequence(frames, cfg, make_mask_provider(a.masks));
    mcbyte::write_mot_file(a.out, mcbyte::records_from_outputs(outputs));
    return 0;
}

std::string machine_lines(const std::string& prefix, const mcbyte::EvalReport& r,
                          bool means = false) {
    std::ostringstream ss;
    const char* m = means ? "_mean" : "";
    ss << prefix << "mota" << m << '=' << mcbyte::format_double(r.mota) << '\n'
       << prefix << "idf1" << m << '=' << mcbyte::format_double(r.idf1) << '\n'
       << prefix << "fp=" << r.fp << '\n'
       << prefix << "fn=" << r.fn << '\n'
       << prefix << "idsw=" << r.idsw << '\n';
    return ss.str();
}

int run_eval(const EvalArgs& a) {
    const auto gt = mcbyte::frames_from_records(mcbyte::read_mot_file(a.gt));
    const auto res = mcbyte::frames_from_records(mcbyte::read_mot_file(a.res));
    const auto rep = mcbyte::evaluate(gt, res);

    std::cout << std::left << std::setw(8) << "metric" << std::right << std::setw(10)
              << "value" << '\n'
              << std::fixed << std::setprecision(4);
    std::cout << std::left << std::setw(8) << "MOTA" << std::right << std::setw(10)
              << rep.mota << '\n';
    std::cout << std::left << std::setw(8) << "IDF1" << std::right << std::setw(10)
              << rep.idf1 << '\n';
    std::cout << std::left << std::setw(8) << "FP" << std::right << std::setw(10) << rep.fp
              << '\n';
    std::cout << std::left << std::setw(8) << "FN" << std::right << std::setw(10) << rep.fn
              << '\n';
    std::cout << std::left << std::setw(8) << "IDSW" << std::right << std::setw(10)
              << rep.idsw << '\n';

    const std::string lines = machine_lines("", rep);
    std::cout << lines;
    if (!a.report_out.empty()) mcbyte::write_text_file(a.report_out, lines);
    return 0;
}

int run_synth(const SynthArgs& a) {
    mcbyte::ScenarioSpec spec =
        a.spec.empty() ? mcbyte::preset(a.preset) : mcbyte::read_scenario_spec_file(a.spec);
    if (a.seed_given) spec.seed = a.seed;
    const mcbyte::Scenario sc = mcbyte::generate(spec);

    fs::create_directories(a.out);
    const fs::path dir(a.out);
    mcbyte::write_mot_file((dir / "det.txt").string(), sc.detections);
    mcbyte::write_mot_file((dir / "gt.txt").string(), sc.gt);
    mcbyte::write_mask_stream_file((dir / "masks.txt").string(), sc.streams);
    mcbyte::write_warp_file((dir / "warps.txt").string(), sc.warps);
    return 0;
}

struct LoadedScenario {
    std::string name;
    mcbyte::FrameMap gt;
    std::vector<mcbyte::FrameInput> frames;
    std::vector<mcbyte::MaskStream> streams;
    bool has_masks = false;

    // Mask providers carry bind state, so every tracker run gets its own.
    std::shared_ptr<mcbyte::MaskProvider> fresh_masks() const {
        if (!has_masks) return std::make_shared<mcbyte::NullMaskProvider>();
        return std::make_shared<mcbyte::FileMaskProvider>(streams);
    }
};

LoadedScenario load_scenario(const fs::path& dir) {
    LoadedScenario sc;
    sc.name = dir.filename().string();
    const auto gt_records = mcbyte::read_mot_file((dir / "gt.txt").string());
    sc.gt = mcbyte::frames_from_records(gt_records);
    int frame_count = 0;
    for (const auto& r : gt_records) frame_count = std::max(frame_count, r.frame);

    const auto dets = mcbyte::read_mot_file((dir / "det.txt").string());
    const std::string warp_path = (dir / "warps.txt").string();
    const auto warps = make_warp_provider(fs::exists(warp_path) ? warp_path : std::string{});
    sc.frames = mcbyte::frames_from_dets(dets, *warps, frame_count);

    const std::string mask_path = (dir / "masks.txt").string();
    if (fs::exists(mask_path)) {
        sc.streams = mcbyte::read_mask_stream_file(mask_path);
        sc.has_masks = true;
    }
    return sc;
}

int run_ablate(const AblateArgs& a) {
    std::vector<mcbyte::Variant> variants;
    {
        std::istringstream ss(a.variants);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            const auto v = mcbyte::parse_variant(tok);
            if (!v) {
                std::cerr << "unknown variant '" << tok << "'\n";
                return 1;
            }
            variants.push_back(*v);
        }
    }
    if (variants.empty()) {
        std::cerr << "--variants lists no variants\n";
        return 1;
    }

    std::vector<fs::path> dirs;
    if (fs::exists(fs::path(a.scenario_dir) / "gt.txt")) {
        dirs.push_back(a.scenario_dir);
    } else if (fs::is_directory(a.scenario_dir)) {
        for (const auto& entry : fs::directory_iterator(a.scenario_dir)) {
            if (entry.is_directory() && fs::exists(entry.path() / "gt.txt")) {
                dirs.push_back(entry.path());
            }
        }
        std::sort(dirs.begin(), dirs.end());
    }
    if (dirs.empty()) {
        throw mcbyte::ParseError(a.scenario_dir + ": no scenario found (needs gt.txt)");
    }

    std::vector<LoadedScenario> scenarios;
    scenarios.reserve(dirs.size());
    for (const auto& d : dirs) scenarios.push_back(load_scenario(d));

    std::cout << std::left << std::setw(10) << "variant" << std::right << std::setw(9)
              << "MOTA" << std::setw(9) << "IDF1" << std::setw(8) << "FP" << std::setw(8)
              << "FN" << std::setw(8) << "IDSW" << '\n'
              << std::fixed << std::setprecision(4);
    std::ostringstream machine;
    for (const auto v : variants) {
        mcbyte::EvalReport total;
        for (const auto& sc : scenarios) {
            mcbyte::TrackerConfig cfg;
            cfg.variant = v;
            const auto outputs = mcbyte::run_sequence(sc.frames, cfg, sc.fresh_masks());
            const auto res =
                mcbyte::frames_from_records(mcbyte::records_from_outputs(outputs));
            const auto rep = mcbyte::evaluate(sc.gt, res);
            total.mota += rep.mota;
            total.idf1 += rep.idf1;
            total.fp += rep.fp;
            total.fn += rep.fn;
            total.idsw += rep.idsw;
        }
        total.mota /= static_cast<double>(scenarios.size());
        total.idf1 /= static_cast<double>(scenarios.size());

        const std::string name = mcbyte::variant_name(v);
        std::cout << std::left << std::setw(10) << name << std::right << std::setw(9)
                  << total.mota << std::setw(9) << total.idf1 << std::setw(8) << total.fp
                  << std::setw(8) << total.fn << std::setw(8) << total.idsw << '\n';
        machine << machine_lines(name + ".", total, true);
    }
    std::cout << machine.str();
    if (!a.report_out.empty()) mcbyte::write_text_file(a.report_out, machine.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mask-cued multi-object tracker"};
    app.require_subcommand(1);

    TrackArgs track_args;
    auto* track = app.add_subcommand("track", "run the tracker over a detection file");
    track->add_option("--det", track_args.det, "MOT detection file")->required();
    track->add_option("--masks", track_args.masks, "mask stream file");
    track->add_option("--warps", track_args.warps, "camera warp file");
    track->add_option("--config", track_args.config, "tracker config (key = value lines)");
    track->add_option("--out", track_args.out, "output MOT result file")->required();

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "score a result file against ground truth");
    eval->add_option("--gt", eval_args.gt, "ground-truth MOT file")->required();
    eval->add_option("--res", eval_args.res, "tracker result MOT file")->required();
    eval->add_option("--report-out", eval_args.report_out, "write metric=value lines here");

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "generate a synthetic scenario directory");
    auto* preset_opt = synth->add_option("--preset", synth_args.preset,
                                         "built-in scenario name");
    auto* spec_opt = synth->add_option("--spec", synth_args.spec, "scenario spec JSON file");
    preset_opt->excludes(spec_opt);
    auto* seed_opt = synth->add_option("--seed", synth_args.seed, "RNG seed override");
    synth->add_option("--out", synth_args.out, "output directory")->required();

    AblateArgs ablate_args;
    auto* ablate = app.add_subcommand("ablate", "run variants over scenario directories");
    ablate->add_option("--scenario-dir", ablate_args.scenario_dir,
                       "scenario directory, or directory of scenario directories")
        ->required();
    ablate->add_option("--variants", ablate_args.variants, "comma-separated variant names")
        ->required();
    ablate->add_option("--report-out", ablate_args.report_out,
                       "write metric=value lines here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (track->parsed()) return run_track(track_args);
        if (eval->parsed()) return run_eval(eval_args);
        if (synth->parsed()) {
            if (synth_args.preset.empty() == synth_args.spec.empty()) {
                std::cerr << "synth needs exactly one of --preset / --spec\n";
                return 1;
            }
            synth_args.seed_given = seed_opt->count() > 0;
            return run_synth(synth_args);
        }
        if (ablate->parsed()) return run_ablate(ablate_args);
    } catch (const mcbyte::ParseError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return 1;
}
