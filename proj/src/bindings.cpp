#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <stdexcept>

#include "mcbyte/assign.hpp"
#include "mcbyte/geometry.hpp"
#include "mcbyte/io.hpp"
#include "mcbyte/metrics.hpp"
#include "mcbyte/synth.hpp"
#include "mcbyte/tracker.hpp"
#include "mcbyte/variant.hpp"

namespace py = pybind11;

namespace {

mcbyte::BBox to_bbox(const std::tuple<double, double, double, double>& t) {
    return mcbyte::BBox{std::get<0>(t), std::get<1>(t), std::get<2>(t), std::get<3>(t)};
}

mcbyte::Variant variant_or_throw(const std::string& name) {
    const auto v = mcbyte::parse_variant(name);
    if (!v) throw std::invalid_argument("unknown variant '" + name + "'");
    return *v;
}

py::dict report_dict(const mcbyte::EvalReport& r) {
    py::dict d;
    d["mota"] = r.mota;
    d["idf1"] = r.idf1;
    d["fp"] = r.fp;
    d["fn"] = r.fn;
    d["idsw"] = r.idsw;
    d["gt_count"] = r.gt_count;
    return d;
}

}  // namespace

PYBIND11_MODULE(_mcbyte, m) {
    m.doc() = "mask-cued multi-object tracking core";

    py::register_exception<mcbyte::ParseError>(m, "ParseError");

    m.def(
        "iou",
        [](const std::tuple<double, double, double, double>& a,
           const std::tuple<double, double, double, double>& b) {
            return mcbyte::iou(to_bbox(a), to_bbox(b));
        },
        py::arg("a"), py::arg("b"), "IoU of two (x, y, w, h) boxes.");

    m.def(
        "mask_ratios",
        [](int width, int height, const std::vector<std::uint32_t>& runs,
           const std::tuple<double, double, double, double>& box) {
            mcbyte::MaskObservation mask;
            mask.width = width;
            mask.height = height;
            mask.runs = runs;
            const auto o = mcbyte::mask_bbox_ratios(mask, to_bbox(box));
            return std::make_tuple(o.mc, o.mf);
        },
        py::arg("width"), py::arg("height"), py::arg("runs"), py::arg("box"),
        "(mc, mf) of an RLE mask against an (x, y, w, h) box.");

    m.def(
        "solve_assignment",
        [](const std::vector<std::vector<double>>& costs, double gate) {
            const int rows = static_cast<int>(costs.size());
            const int cols = rows == 0 ? 0 : static_cast<int>(costs[0].size());
            mcbyte::Grid<double> grid(rows, cols, 0.0);
            for (int r = 0; r < rows; ++r) {
                if (static_cast<int>(costs[r].size()) != cols) {
                    throw std::invalid_argument("cost rows have unequal lengths");
                }
                for (int c = 0; c < cols; ++c) grid.at(r, c) = costs[r][c];
            }
            return mcbyte::solve_assignment(grid, gate).matches;
        },
        py::arg("costs"), py::arg("gate"),
        "Gated min-cost matching; returns (row, col) pairs sorted by row.");

    m.def("rle_encode", &mcbyte::rle_encode, py::arg("bitmap"), py::arg("width"),
          py::arg("height"));
    m.def("rle_decode", &mcbyte::rle_decode, py::arg("runs"), py::arg("width"),
          py::arg("height"));

    m.def("preset_names", [] { return mcbyte::preset_names(); });

    m.def(
        "generate_scenario",
        [](const std::string& preset_name, std::uint64_t seed, const std::string& out_dir) {
            auto spec = mcbyte::preset(preset_name);
            spec.seed = seed;
            const auto sc = mcbyte::generate(spec);
            mcbyte::write_mot_file(out_dir + "/det.txt", sc.detections);
            mcbyte::write_mot_file(out_dir + "/gt.txt", sc.gt);
            mcbyte::write_mask_stream_file(out_dir + "/masks.txt", sc.streams);
            mcbyte::write_warp_file(out_dir + "/warps.txt", sc.warps);
        },
        py::arg("preset"), py::arg("seed"), py::arg("out_dir"),
        "Write det/gt/masks/warps files for a built-in scenario.");

    m.def(
        "track_file",
        [](const std::string& det_path, const std::string& out_path,
           const std::string& masks_path, const std::string& warps_path,
           const std::string& variant) {
            mcbyte::TrackerConfig cfg;
            cfg.variant = variant_or_throw(variant);
            const auto dets = mcbyte::read_mot_file(det_path);
            std::unique_ptr<mcbyte::WarpProvider> warps;
            if (warps_path.empty()) {
                warps = std::make_unique<mcbyte::IdentityWarpProvider>();
            } else {
                warps = std::make_unique<mcbyte::FileWarpProvider>(
                    mcbyte::read_warp_file(warps_path));
            }
            std::shared_ptr<mcbyte::MaskProvider> masks;
            if (masks_path.empty()) {
                masks = std::make_shared<mcbyte::NullMaskProvider>();
            } else {
                masks = std::make_shared<mcbyte::FileMaskProvider>(
                    mcbyte::read_mask_stream_file(masks_path));
            }
            const auto frames = mcbyte::frames_from_dets(dets, *warps);
            const auto outputs = mcbyte::run_sequence(frames, cfg, masks);
            mcbyte::write_mot_file(out_path, mcbyte::records_from_outputs(outputs));
        },
        py::arg("det_path"), py::arg("out_path"), py::arg("masks_path") = "",
        py::arg("warps_path") = "", py::arg("variant") = "mcbyte",
        "Run the tracker over a MOT detection file and write MOT results.");

    m.def(
        "evaluate_files",
        [](const std::string& gt_path, const std::string& res_path, double iou_min) {
            const auto gt = mcbyte::frames_from_records(mcbyte::read_mot_file(gt_path));
            const auto res = mcbyte::frames_from_records(mcbyte::read_mot_file(res_path));
            return report_dict(mcbyte::evaluate(gt, res, iou_min));
        },
        py::arg("gt_path"), py::arg("res_path"), py::arg("iou_min") = 0.5,
        "CLEAR-MOT/IDF1 report for a result file against ground truth.");
}
