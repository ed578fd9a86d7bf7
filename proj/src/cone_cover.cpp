#include "vg/cone_cover.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vg {

namespace {

// Minimax covering of the sphere by 20 caps, found offline by optimising the
// largest Delaunay circumradius. Covering radius about 29.66 degrees.
constexpr std::array<std::array<double, 3>, 20> kDirections20 = {{
    {0.57031488656665519, -0.69607007279606492, -0.43615064360624789},
    {-0.8543204173226373, 0.5131542256661713, -0.082518878001503745},
    {-0.51531646182782287, -0.79391503053267765, 0.32271948881892998},
    {-0.36650322611609065, 0.68383111772488259, 0.63091234547885933},
    {-0.35666197317351567, -0.72729786643933736, -0.58637023318442927},
    {-0.87217331700182832, -0.034515241494708172, 0.48797787164439171},
    {0.8924826866419977, 0.33159493810742607, 0.30580950126805079},
    {0.15841210957171042, -0.9847591673650018, 0.071798230003451008},
    {0.12936608479999898, -0.24308574254093326, -0.96133955389177794},
    {0.22679619045128244, -0.57856328829946313, 0.78347176683585618},
    {-0.2825122359562085, -0.14298505861847782, 0.94854736810920204},
    {0.55725911056431487, 0.76179185922684522, -0.33035654512779811},
    {0.24709383371699142, 0.8887572488242057, 0.38607666337331076},
    {0.84776383360163499, -0.40613214940142539, 0.34110578954283027},
    {0.15275311339504771, 0.44257897735725166, -0.88362341251775867},
    {-0.90044431982285833, -0.31337184184024913, -0.30165893926817439},
    {0.86675165208360239, -0.017363196395414934, -0.49843765209028917},
    {0.35886272032880068, 0.18414240255312811, 0.91504596799296078},
    {-0.32051117786027711, 0.9025229855420086, -0.2876192716682201},
    {-0.51814122893272208, 0.1829320541618682, -0.83550316004202374},
}};

// Looser covering by 32 caps (about 23.5 degrees), used only on request.
constexpr std::array<std::array<double, 3>, 32> kDirections32 = {{
    {-0.37988712946203085, -0.042741238098596319, -0.92404488821425623},
    {0.66903844848332816, -0.45537541429271305, 0.58738470060835013},
    {-0.095137022385307926, 0.56988806621634991, 0.81619638504213343},
    {-0.16298674483826797, -0.66685539670300853, -0.72714455295704328},
    {0.95725850312915561, -0.20120024420504054, -0.2077850329517516},
    {0.19459811982104031, -0.012613527896027418, 0.98080195283050509},
    {0.20715531175787411, -0.1098379749142878, -0.97212257255822754},
    {0.15591779055734883, -0.92683027903867343, 0.34157762872414477},
    {0.28768272820623425, -0.92233811168963453, -0.25793614639405826},
    {0.27153844959769419, 0.93739567459770123, -0.21807388572591899},
    {-0.31978794152105861, 0.84353081603767133, -0.4314990554480323},
    {-0.43192861628548718, -0.73103123724107455, 0.52823385030825898},
    {-0.70608912486069852, 0.70810552758994494, -0.0049708701470095335},
    {-0.76173258723067172, -0.4241373859577493, -0.48976621298717049},
    {-0.39447634532544507, -0.90879525692203622, -0.13593967034935167},
    {0.93518382714087545, 0.12174265984704608, 0.33258071836399611},
    {0.78817719647685214, -0.60853685485540565, 0.091976101442607164},
    {0.41395179917087271, 0.55708816717414611, -0.71992824778428322},
    {0.52522879401493516, -0.56964326167848123, -0.63217186615818188},
    {-0.4596650980787152, -0.060205941317749118, 0.88604923240095912},
    {-0.092331350346631952, 0.56562923982462887, -0.81947451747969557},
    {-0.13152828416904672, 0.94593561916041768, 0.29648965389561871},
    {-0.82053349332936965, -0.091054988346086302, 0.56429936684529047},
    {0.50908760670826514, 0.74079655296231017, 0.43823541141173167},
    {-0.86621862597418109, -0.49370521901656605, 0.076944452244499417},
    {0.55157918718585441, 0.2575631614452506, 0.79336096332610162},
    {-0.99318310631735607, 0.10682318948353386, -0.046648939048730458},
    {-0.68095346081996011, 0.48850975826573428, 0.54558280790038916},
    {0.76651548591754481, 0.11088597957444538, -0.63258067420875719},
    {0.82501830941779786, 0.55422355838349524, -0.11036773286669885},
    {-0.75694037338664644, 0.27991604212631011, -0.59049833234110494},
    {0.027941092366257251, -0.55660790799238102, 0.83030532463529683},
}};

constexpr long kCertificateSamples = 1'000'000;

template <std::size_t N>
std::vector<Point> load(const std::array<std::array<double, 3>, N>& raw) {
  std::vector<Point> out;
  for (const auto& v : raw) out.push_back(normalized(Point(v[0], v[1], v[2])));
  return out;
}

ConeSet certify(std::vector<Point> dirs, bool fallback) {
  ConeSet set;
  set.certified_radius = sampled_covering_radius(dirs, kCertificateSamples);
  set.directions = std::move(dirs);
  set.aperture = std::numbers::pi / 3;
  set.fallback = fallback;
  return set;
}

bool passes(const ConeSet& set) {
  return set.certified_radius <= std::numbers::pi / 6 + 1e-6;
}

}  // namespace

double sampled_covering_radius(const std::vector<Point>& dirs, long samples) {
  // Fibonacci lattice on the sphere: deterministic and evenly spread.
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (long i = 0; i < samples; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(samples);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double th = golden * static_cast<double>(i);
    const Point u(rho * std::cos(th), rho * std::sin(th), z);
    double best = -1.0;
    for (const Point& d : dirs) best = std::max(best, dot(u, d));
    worst = std::max(worst, std::acos(std::clamp(best, -1.0, 1.0)));
  }
  return worst;
}

const ConeSet& cone_cover_directions(bool allow_fallback) {
  static const ConeSet primary = certify(load(kDirections20), false);
  if (passes(primary)) return primary;
  if (!allow_fallback)
    throw std::runtime_error("20-direction cone set failed its covering certificate");
  static const ConeSet backup = certify(load(kDirections32), true);
  if (!passes(backup))
    throw std::runtime_error("fallback cone set failed its covering certificate");
  return backup;
}

int nearest_direction(const ConeSet& cones, const Point& v) {
  const Point u = normalized(v);
  int best = 0;
  double best_dot = -2.0;
  for (std::size_t i = 0; i < cones.directions.size(); ++i) {
    const double c = dot(u, cones.directions[i]);
    if (c > best_dot) {
      best_dot = c;
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace vg
