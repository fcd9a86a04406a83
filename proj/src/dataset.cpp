/*
 Copyright 2026 the rdgeo authors
 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "rdgeo/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace rdgeo {

namespace {

const char* kHeader = "id,name,latitude,longitude,orientation,year_ce";

// Minimal CSV field splitter with double-quote support.
std::vector<std::string> split_csv_row(const std::string& line, std::size_t row, bool& ok) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    ok = true;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c == '\r') {
            // tolerate CRLF
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    if (quoted) ok = false;
    (void)row;
    return fields;
}

double parse_double(const std::string& s, std::size_t row, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v))
            fail(errc::parse, std::string("row ") + std::to_string(row) + ": bad " + what + " '" + s + "'");
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(errc::parse, std::string("row ") + std::to_string(row) + ": bad " + what + " '" + s + "'");
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::vector<Site> load_sites(const std::string& path, const SiteFilter& filter) {
    std::ifstream in(path);
    if (!in) fail(errc::io, "cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) fail(errc::parse, path + ": missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader)
        fail(errc::parse, path + ": header must be exactly '" + kHeader + "'");

    std::vector<Site> sites;
    std::unordered_set<std::string> seen;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        bool ok = false;
        const auto fields = split_csv_row(line, row, ok);
        if (!ok || fields.size() != 6)
            fail(errc::parse, path + ": row " + std::to_string(row) + ": expected 6 fields");

        Site s;
        s.id = fields[0];
        s.name = fields[1];
        if (s.id.empty())
            fail(errc::parse, path + ": row " + std::to_string(row) + ": empty id");
        if (!seen.insert(s.id).second)
            fail(errc::duplicate_id, path + ": row " + std::to_string(row) + ": duplicate id '" + s.id + "'");

        const double lat = parse_double(fields[2], row, "latitude");
        const double lon = parse_double(fields[3], row, "longitude");
        const double orient = parse_double(fields[4], row, "orientation");
        if (lat < -90.0 || lat > 90.0)
            fail(errc::validation, path + ": row " + std::to_string(row) + ": latitude out of range");
        if (lon < -360.0 || lon > 360.0)
            fail(errc::validation, path + ": row " + std::to_string(row) + ": longitude out of range");
        if (orient < -360.0 || orient > 720.0)
            fail(errc::validation, path + ": row " + std::to_string(row) + ": orientation out of range");
        s.location = GeoPoint(lat, lon);
        s.orientation_deg = wrap_deg_360(orient);
        if (!fields[5].empty()) {
            try {
                std::size_t pos = 0;
                s.year_ce = std::stoi(fields[5], &pos);
                if (pos != fields[5].size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                fail(errc::parse, path + ": row " + std::to_string(row) + ": bad year_ce '" + fields[5] + "'");
            }
        }

        if (filter.year_before && (!s.year_ce || *s.year_ce >= *filter.year_before)) continue;
        if (filter.exclude_ids.count(s.id)) continue;
        sites.push_back(std::move(s));
    }
    return sites;
}

void save_sites(const std::string& path, const std::vector<Site>& sites) {
    std::ofstream out(path);
    if (!out) fail(errc::io, "cannot write " + path);
    out << kHeader << '\n';
    char buf[128];
    for (const auto& s : sites) {
        std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g", s.location.lat, s.location.lon,
                      s.orientation_deg);
        out << csv_escape(s.id) << ',' << csv_escape(s.name) << ',' << buf << ',';
        if (s.year_ce) out << *s.year_ce;
        out << '\n';
    }
    if (!out) fail(errc::io, "write failed: " + path);
}

std::set<std::string> load_exclusions(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io, "cannot open " + path);
    std::set<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t");
        line = line.substr(start, end - start + 1);
        if (line.empty() || line[0] == '#') continue;
        ids.insert(line);
    }
    return ids;
}

SourceDistribution uniform_distribution(std::vector<Site> sites) {
    if (sites.empty()) fail(errc::empty_dataset, "no sites");
    SourceDistribution d;
    d.probabilities.assign(sites.size(), 1.0 / static_cast<double>(sites.size()));
    d.sites = std::move(sites);
    return d;
}

SourceDistribution weighted_distribution(std::vector<Site> sites) {
    std::vector<double> w;
    w.reserve(sites.size());
    for (const auto& s : sites) w.push_back(s.weight);
    return weighted_distribution(std::move(sites), w);
}

SourceDistribution weighted_distribution(std::vector<Site> sites, const std::vector<double>& weights) {
    if (sites.empty()) fail(errc::empty_dataset, "no sites");
    if (weights.size() != sites.size())
        fail(errc::invalid_argument, "weights length does not match site count");
    double sum = 0.0;
    for (const double w : weights) {
        if (!(w >= 0.0)) fail(errc::validation, "negative site weight");
        sum += w;
    }
    if (sum <= 0.0) fail(errc::validation, "all site weights are zero");
    SourceDistribution d;
    d.probabilities.reserve(weights.size());
    for (const double w : weights) d.probabilities.push_back(w / sum);
    d.sites = std::move(sites);
    return d;
}

} // namespace rdgeo
