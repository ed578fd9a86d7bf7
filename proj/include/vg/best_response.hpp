#pragma once

#include <span>
#include <string>
#include <vector>

#include "vg/geometry.hpp"
#include "vg/kernels.hpp"

namespace vg {

enum class ResponseMethod { arrangement_sweep, brute_force, halfcell, candidate_enumeration };

std::string to_string(ResponseMethod m);

struct BestResponse {
  Point location;
  int payoff = 0;
  std::vector<int> served;
  ResponseMethod method = ResponseMethod::arrangement_sweep;
};

// Disk i is centred at user i and passes through its nearest F1 facility.
std::vector<Disk> nearest_facility_disks(const UserSet& users, const FacilitySet& f1);

// Point covered by the most open disks, avoiding `forbidden`. In the plane
// this is the circular sweep; in space it enumerates candidate points.
BestResponse max_depth_point(std::span<const Disk> disks, const FacilitySet& forbidden,
                             kernels::Exec exec = kernels::Exec::parallel);

BestResponse best_response(const UserSet& users, const FacilitySet& f1,
                           kernels::Exec exec = kernels::Exec::parallel);

// Step just off the facility of the most populated cell, towards the side
// holding at least half of that cell.
BestResponse halfcell_response(const UserSet& users, const FacilitySet& f1);

// Disk (ball) centred at the farthest served user of the fullest sector
// (cone) around the response point, through nothing but served users' side.
Disk sector_witness(const UserSet& users, const FacilitySet& f1, const BestResponse& response);

// Users inside a witness disk, counted with closed membership.
int count_users_in(const Disk& disk, const UserSet& users);
// F1 facilities strictly inside a witness disk.
int count_facilities_in(const Disk& disk, const FacilitySet& f1);

}  // namespace vg
