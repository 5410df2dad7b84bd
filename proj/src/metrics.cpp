#include "mcbyte/metrics.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "mcbyte/assign.hpp"

namespace mcbyte {

FrameMap frames_from_records(std::span<const MotRecord> records) {
    FrameMap out;
    for (const MotRecord& r : records) {
        out[r.frame].push_back(IdBox{r.id, r.bbox()});
    }
    return out;
}

namespace {

void reject_duplicate_ids(const std::vector<IdBox>& boxes, const char* which) {
    std::set<long long> seen;
    for (const IdBox& b : boxes) {
        if (!seen.insert(b.id).second) {
            throw std::invalid_argument(std::string("duplicate ") + which + " id " +
                                        std::to_string(b.id) + " within one frame");
        }
    }
}

}  // namespace

FrameEvents clear_match_frame(const std::vector<IdBox>& gt, const std::vector<IdBox>& res,
                              std::map<long long, long long>& correspondence, double iou_min) {
    reject_duplicate_ids(gt, "ground-truth");
    reject_duplicate_ids(res, "result");

    FrameEvents ev;
    std::vector<char> gt_used(gt.size(), 0), res_used(res.size(), 0);

    // Carry over surviving correspondences first.
    for (std::size_t i = 0; i < gt.size(); ++i) {
        const auto it = correspondence.find(gt[i].id);
        if (it == correspondence.end()) continue;
        for (std::size_t j = 0; j < res.size(); ++j) {
            if (res_used[j] || res[j].id != it->second) continue;
            if (iou(gt[i].box, res[j].box) >= iou_min) {
                gt_used[i] = 1;
                res_used[j] = 1;
                ev.matches.emplace_back(gt[i].id, res[j].id);
            }
            break;
        }
    }

    std::vector<std::size_t> gt_rest, res_rest;
    for (std::size_t i = 0; i < gt.size(); ++i) {
        if (!gt_used[i]) gt_rest.push_back(i);
    }
    for (std::size_t j = 0; j < res.size(); ++j) {
        if (!res_used[j]) res_rest.push_back(j);
    }

    Grid<double> costs(static_cast<int>(gt_rest.size()), static_cast<int>(res_rest.size()));
    for (int i = 0; i < costs.rows(); ++i) {
        for (int j = 0; j < costs.cols(); ++j) {
            costs.at(i, j) = 1.0 - iou(gt[gt_rest[i]].box, res[res_rest[j]].box);
        }
    }
    const Assignment a = solve_assignment(costs, 1.0 - iou_min);
    for (const auto& [i, j] : a.matches) {
        const long long gid = gt[gt_rest[i]].id;
        const long long rid = res[res_rest[j]].id;
        const auto it = correspondence.find(gid);
        if (it != correspondence.end() && it->second != rid) {
            ++ev.idsw;
        }
        correspondence[gid] = rid;
        gt_used[gt_rest[i]] = 1;
        res_used[res_rest[j]] = 1;
        ev.matches.emplace_back(gid, rid);
    }

    for (std::size_t i = 0; i < gt.size(); ++i) {
        if (!gt_used[i]) ++ev.fn;
    }
    for (std::size_t j = 0; j < res.size(); ++j) {
        if (!res_used[j]) ++ev.fp;
    }
    return ev;
}

namespace {

struct Trajectory {
    long long id = 0;
    std::map<int, BBox> boxes;
};

std::vector<Trajectory> trajectories(const FrameMap& frames) {
    std::map<long long, Trajectory> by_id;
    for (const auto& [frame, boxes] : frames) {
        for (const IdBox& b : boxes) {
            Trajectory& t = by_id[b.id];
            t.id = b.id;
            t.boxes.emplace(frame, b.box);
        }
    }
    std::vector<Trajectory> out;
    out.reserve(by_id.size());
    for (auto& [id, t] : by_id) {
        out.push_back(std::move(t));
    }
    return out;
}

// Frames where both trajectories are present and positionally matched.
long long overlap_count(const Trajectory& g, const Trajectory& r, double iou_min) {
    long long m = 0;
    for (const auto& [frame, box] : g.boxes) {
        const auto it = r.boxes.find(frame);
        if (it != r.boxes.end() && iou(box, it->second) >= iou_min) {
            ++m;
        }
    }
    return m;
}

}  // namespace

EvalReport evaluate(const FrameMap& gt, const FrameMap& res, double iou_min) {
    EvalReport rep;
    for (const auto& [frame, boxes] : gt) {
        rep.gt_count += static_cast<long long>(boxes.size());
    }
    if (rep.gt_count == 0) {
        throw std::invalid_argument("ground truth holds no boxes; MOTA undefined");
    }

    // CLEAR pass over the union of frames.
    std::set<int> all_frames;
    for (const auto& [frame, boxes] : gt) all_frames.insert(frame);
    for (const auto& [frame, boxes] : res) all_frames.insert(frame);
    static const std::vector<IdBox> kEmpty;
    std::map<long long, long long> correspondence;
    for (const int frame : all_frames) {
        const auto git = gt.find(frame);
        const auto rit = res.find(frame);
        const FrameEvents ev = clear_match_frame(git != gt.end() ? git->second : kEmpty,
                                                 rit != res.end() ? rit->second : kEmpty,
                                                 correspondence, iou_min);
        rep.fp += ev.fp;
        rep.fn += ev.fn;
        rep.idsw += ev.idsw;
    }
    rep.mota = 1.0 - static_cast<double>(rep.fp + rep.fn + rep.idsw) /
                         static_cast<double>(rep.gt_count);

    // Global trajectory matching for the identity measures.
    const std::vector<Trajectory> gts = trajectories(gt);
    const std::vector<Trajectory> ress = trajectories(res);
    long long res_count = 0;
    for (const Trajectory& t : ress) {
        res_count += static_cast<long long>(t.boxes.size());
    }
    const int ng = static_cast<int>(gts.size());
    const int nr = static_cast<int>(ress.size());
    const double big = static_cast<double>(rep.gt_count + res_count + 1);
    const double forbidden = 4.0 * big;
    Grid<double> costs(ng + nr, nr + ng, 0.0);
    for (int i = 0; i < ng; ++i) {
        const auto len_g = static_cast<double>(gts[i].boxes.size());
        for (int j = 0; j < nr; ++j) {
            const auto len_r = static_cast<double>(ress[j].boxes.size());
            costs.at(i, j) = len_g + len_r - 2.0 * overlap_count(gts[i], ress[j], iou_min);
        }
        for (int j = 0; j < ng; ++j) {
            costs.at(i, nr + j) = (j == i) ? len_g : forbidden;
        }
    }
    for (int i = 0; i < nr; ++i) {
        const auto len_r = static_cast<double>(ress[i].boxes.size());
        for (int j = 0; j < nr; ++j) {
            costs.at(ng + i, j) = (j == i) ? len_r : forbidden;
        }
    }
    const Assignment a = solve_assignment(costs, 8.0 * big);
    for (const auto& [i, j] : a.matches) {
        if (i < ng && j < nr) {
            rep.idtp += overlap_count(gts[i], ress[j], iou_min);
        }
    }
    rep.idfn = rep.gt_count - rep.idtp;
    rep.idfp = res_count - rep.idtp;
    rep.idf1 = 2.0 * static_cast<double>(rep.idtp) /
               static_cast<double>(2 * rep.idtp + rep.idfp + rep.idfn);
    return rep;
}

}  // namespace mcbyte
