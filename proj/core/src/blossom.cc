// Copyright 2026 The pqec Authors
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

#include "pqec/blossom.h"

#include <algorithm>
#include <stdexcept>

namespace pqec {

namespace {

class Matcher {
   public:
    Matcher(int n, const std::vector<WeightedEdge> &edges)
        : n_(n),
          edges_(edges),
          endpoint_(2 * edges.size()),
          neighbend_(n),
          mate_(n, -1),
          label_(2 * n, 0),
          labelend_(2 * n, -1),
          inblossom_(n),
          blossomparent_(2 * n, -1),
          blossomchilds_(2 * n),
          blossombase_(2 * n, -1),
          blossomendps_(2 * n),
          bestedge_(2 * n, -1),
          blossombestedges_(2 * n),
          has_bestedges_(2 * n, false),
          dualvar_(2 * n, 0),
          allowedge_(edges.size(), false) {
        int64_t maxweight = 0;
        for (size_t k = 0; k < edges.size(); k++) {
            const auto &e = edges[k];
            if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v) {
                throw std::invalid_argument("bad matching edge");
            }
            maxweight = std::max(maxweight, e.weight);
            endpoint_[2 * k] = e.u;
            endpoint_[2 * k + 1] = e.v;
            neighbend_[e.u].push_back(2 * (int)k + 1);
            neighbend_[e.v].push_back(2 * (int)k);
        }
        for (int v = 0; v < n; v++) {
            inblossom_[v] = v;
            blossombase_[v] = v;
            dualvar_[v] = maxweight;
        }
        for (int b = 2 * n - 1; b >= n; b--) {
            unused_.push_back(b);
        }
        std::reverse(unused_.begin(), unused_.end());
    }

    std::vector<int> solve();

   private:
    int64_t slack(int k) const {
        const auto &e = edges_[k];
        return dualvar_[e.u] + dualvar_[e.v] - 2 * e.weight;
    }

    void leaves(int b, std::vector<int> &out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[b]) {
            leaves(t, out);
        }
    }
    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        leaves(b, out);
        return out;
    }

    void assign_label(int w, int t, int p);
    int scan_blossom(int v, int w);
    void add_blossom(int base, int k);
    void expand_blossom(int b, bool endstage);
    void augment_blossom(int b, int v);
    void augment_matching(int k);

    int n_;
    const std::vector<WeightedEdge> &edges_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> blossombestedges_;
    std::vector<bool> has_bestedges_;
    std::vector<int> unused_;
    std::vector<int64_t> dualvar_;
    std::vector<bool> allowedge_;
    std::vector<int> queue_;
};

void Matcher::assign_label(int w, int t, int p) {
    while (true) {
        int b = inblossom_[w];
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            leaves(b, queue_);
            return;
        }
        int base = blossombase_[b];
        w = endpoint_[mate_[base]];
        t = 1;
        p = mate_[base] ^ 1;
    }
}

int Matcher::scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
        int b = inblossom_[v];
        if (label_[b] & 4) {
            base = blossombase_[b];
            break;
        }
        path.push_back(b);
        label_[b] = 5;
        if (labelend_[b] == -1) {
            v = -1;
        } else {
            v = endpoint_[labelend_[b]];
            b = inblossom_[v];
            v = endpoint_[labelend_[b]];
        }
        if (w != -1) {
            std::swap(v, w);
        }
    }
    for (int b : path) {
        label_[b] = 1;
    }
    return base;
}

void Matcher::add_blossom(int base, int k) {
    int v = edges_[k].u;
    int w = edges_[k].v;
    int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    int b = unused_.back();
    unused_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    std::vector<int> path, endps;
    while (bv != bb) {
        blossomparent_[bv] = b;
        path.push_back(bv);
        endps.push_back(labelend_[bv]);
        v = endpoint_[labelend_[bv]];
        bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
        blossomparent_[bw] = b;
        path.push_back(bw);
        endps.push_back(labelend_[bw] ^ 1);
        w = endpoint_[labelend_[bw]];
        bw = inblossom_[w];
    }
    blossomchilds_[b] = path;
    blossomendps_[b] = endps;
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    for (int leaf : leaves(b)) {
        if (label_[inblossom_[leaf]] == 2) {
            queue_.push_back(leaf);
        }
        inblossom_[leaf] = b;
    }
    std::vector<int> bestedgeto(2 * n_, -1);
    for (int sub : path) {
        std::vector<int> nblist;
        if (!has_bestedges_[sub]) {
            for (int leaf : leaves(sub)) {
                for (int p : neighbend_[leaf]) {
                    nblist.push_back(p / 2);
                }
            }
        } else {
            nblist = blossombestedges_[sub];
        }
        for (int kk : nblist) {
            int i = edges_[kk].u;
            int j = edges_[kk].v;
            if (inblossom_[j] == b) {
                std::swap(i, j);
            }
            int bj = inblossom_[j];
            if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
                bestedgeto[bj] = kk;
            }
        }
        blossombestedges_[sub].clear();
        has_bestedges_[sub] = false;
        bestedge_[sub] = -1;
    }
    blossombestedges_[b].clear();
    for (int kk : bestedgeto) {
        if (kk != -1) {
            blossombestedges_[b].push_back(kk);
        }
    }
    has_bestedges_[b] = true;
    bestedge_[b] = -1;
    for (int kk : blossombestedges_[b]) {
        if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) {
            bestedge_[b] = kk;
        }
    }
}

void Matcher::expand_blossom(int b, bool endstage) {
    for (int s : blossomchilds_[b]) {
        blossomparent_[s] = -1;
        if (s < n_) {
            inblossom_[s] = s;
        } else if (endstage && dualvar_[s] == 0) {
            expand_blossom(s, endstage);
        } else {
            for (int leaf : leaves(s)) {
                inblossom_[leaf] = s;
            }
        }
    }
    if (!endstage && label_[b] == 2) {
        const auto &childs = blossomchilds_[b];
        const auto &endps = blossomendps_[b];
        int len = (int)childs.size();
        auto at = [len](const std::vector<int> &xs, int j) { return xs[((j % len) + len) % len]; };
        int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
        int j = (int)(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
        int jstep, endptrick;
        if (j & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        int p = labelend_[b];
        while (j != 0) {
            label_[endpoint_[p ^ 1]] = 0;
            label_[endpoint_[at(endps, j - endptrick) ^ endptrick ^ 1]] = 0;
            assign_label(endpoint_[p ^ 1], 2, p);
            allowedge_[at(endps, j - endptrick) / 2] = true;
            j += jstep;
            p = at(endps, j - endptrick) ^ endptrick;
            allowedge_[p / 2] = true;
            j += jstep;
        }
        int bv = at(childs, j);
        label_[endpoint_[p ^ 1]] = label_[bv] = 2;
        labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
        bestedge_[bv] = -1;
        j += jstep;
        while (at(childs, j) != entrychild) {
            bv = at(childs, j);
            if (label_[bv] == 1) {
                j += jstep;
                continue;
            }
            int found = -1;
            for (int leaf : leaves(bv)) {
                if (label_[leaf] != 0) {
                    found = leaf;
                    break;
                }
            }
            if (found != -1) {
                label_[found] = 0;
                label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                assign_label(found, 2, labelend_[found]);
            }
            j += jstep;
        }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_bestedges_[b] = false;
    bestedge_[b] = -1;
    unused_.push_back(b);
}

void Matcher::augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) {
        t = blossomparent_[t];
    }
    if (t >= n_) {
        augment_blossom(t, v);
    }
    auto &childs = blossomchilds_[b];
    auto &endps = blossomendps_[b];
    int len = (int)childs.size();
    auto at = [len](const std::vector<int> &xs, int j) { return xs[((j % len) + len) % len]; };
    int i = (int)(std::find(childs.begin(), childs.end(), t) - childs.begin());
    int j = i;
    int jstep, endptrick;
    if (i & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
    } else {
        jstep = -1;
        endptrick = 1;
    }
    while (j != 0) {
        j += jstep;
        t = at(childs, j);
        int p = at(endps, j - endptrick) ^ endptrick;
        if (t >= n_) {
            augment_blossom(t, endpoint_[p]);
        }
        j += jstep;
        t = at(childs, j);
        if (t >= n_) {
            augment_blossom(t, endpoint_[p ^ 1]);
        }
        mate_[endpoint_[p]] = p ^ 1;
        mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
}

void Matcher::augment_matching(int k) {
    int ends[2][2] = {{edges_[k].u, 2 * k + 1}, {edges_[k].v, 2 * k}};
    for (auto &sp : ends) {
        int s = sp[0];
        int p = sp[1];
        while (true) {
            int bs = inblossom_[s];
            if (bs >= n_) {
                augment_blossom(bs, s);
            }
            mate_[s] = p;
            if (labelend_[bs] == -1) {
                break;
            }
            int t = endpoint_[labelend_[bs]];
            int bt = inblossom_[t];
            s = endpoint_[labelend_[bt]];
            int j = endpoint_[labelend_[bt] ^ 1];
            if (bt >= n_) {
                augment_blossom(bt, j);
            }
            mate_[j] = labelend_[bt];
            p = labelend_[bt] ^ 1;
        }
    }
}

std::vector<int> Matcher::solve() {
    int n = n_;
    int nedge = (int)edges_.size();
    for (int stage = 0; stage < n; stage++) {
        std::fill(label_.begin(), label_.end(), 0);
        std::fill(bestedge_.begin(), bestedge_.end(), -1);
        for (int b = n; b < 2 * n; b++) {
            blossombestedges_[b].clear();
            has_bestedges_[b] = false;
        }
        std::fill(allowedge_.begin(), allowedge_.end(), false);
        queue_.clear();
        for (int v = 0; v < n; v++) {
            if (mate_[v] == -1 && label_[inblossom_[v]] == 0) {
                assign_label(v, 1, -1);
            }
        }
        bool augmented = false;
        while (true) {
            while (!queue_.empty() && !augmented) {
                int v = queue_.back();
                queue_.pop_back();
                for (int p : neighbend_[v]) {
                    int k = p / 2;
                    int w = endpoint_[p];
                    if (inblossom_[v] == inblossom_[w]) {
                        continue;
                    }
                    int64_t kslack = 0;
                    if (!allowedge_[k]) {
                        kslack = slack(k);
                        if (kslack <= 0) {
                            allowedge_[k] = true;
                        }
                    }
                    if (allowedge_[k]) {
                        if (label_[inblossom_[w]] == 0) {
                            assign_label(w, 2, p ^ 1);
                        } else if (label_[inblossom_[w]] == 1) {
                            int base = scan_blossom(v, w);
                            if (base >= 0) {
                                add_blossom(base, k);
                            } else {
                                augment_matching(k);
                                augmented = true;
                                break;
                            }
                        } else if (label_[w] == 0) {
                            label_[w] = 2;
                            labelend_[w] = p ^ 1;
                        }
                    } else if (label_[inblossom_[w]] == 1) {
                        int b = inblossom_[v];
                        if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                            bestedge_[b] = k;
                        }
                    } else if (label_[w] == 0) {
                        if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                            bestedge_[w] = k;
                        }
                    }
                }
            }
            if (augmented) {
                break;
            }
            int deltatype = 1;
            int64_t delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n);
            int deltaedge = -1;
            int deltablossom = -1;
            for (int v = 0; v < n; v++) {
                if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                    int64_t d = slack(bestedge_[v]);
                    if (d < delta) {
                        delta = d;
                        deltatype = 2;
                        deltaedge = bestedge_[v];
                    }
                }
            }
            for (int b = 0; b < 2 * n; b++) {
                if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                    int64_t d = slack(bestedge_[b]) / 2;
                    if (d < delta) {
                        delta = d;
                        deltatype = 3;
                        deltaedge = bestedge_[b];
                    }
                }
            }
            for (int b = n; b < 2 * n; b++) {
                if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 && dualvar_[b] < delta) {
                    delta = dualvar_[b];
                    deltatype = 4;
                    deltablossom = b;
                }
            }
            for (int v = 0; v < n; v++) {
                if (label_[inblossom_[v]] == 1) {
                    dualvar_[v] -= delta;
                } else if (label_[inblossom_[v]] == 2) {
                    dualvar_[v] += delta;
                }
            }
            for (int b = n; b < 2 * n; b++) {
                if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                    if (label_[b] == 1) {
                        dualvar_[b] += delta;
                    } else if (label_[b] == 2) {
                        dualvar_[b] -= delta;
                    }
                }
            }
            if (deltatype == 1) {
                break;
            } else if (deltatype == 2) {
                allowedge_[deltaedge] = true;
                int i = edges_[deltaedge].u;
                int j = edges_[deltaedge].v;
                if (label_[inblossom_[i]] == 0) {
                    std::swap(i, j);
                }
                queue_.push_back(i);
            } else if (deltatype == 3) {
                allowedge_[deltaedge] = true;
                queue_.push_back(edges_[deltaedge].u);
            } else {
                expand_blossom(deltablossom, false);
            }
        }
        if (!augmented) {
            break;
        }
        for (int b = n; b < 2 * n; b++) {
            if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0) {
                expand_blossom(b, true);
            }
        }
    }
    (void)nedge;
    std::vector<int> mate(n, -1);
    for (int v = 0; v < n; v++) {
        if (mate_[v] >= 0) {
            mate[v] = endpoint_[mate_[v]];
        }
    }
    return mate;
}

}  // namespace

std::vector<int> max_weight_matching(int num_vertices, const std::vector<WeightedEdge> &edges) {
    if (edges.empty()) {
        return std::vector<int>(num_vertices, -1);
    }
    Matcher m(num_vertices, edges);
    return m.solve();
}

}  // namespace pqec
