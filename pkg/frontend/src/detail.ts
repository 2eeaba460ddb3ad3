// Detail panel model: impact explanation with references shown verbatim, and
// a 2.5D pose viewer (orthographic projection with a rotation control).

import type { Pose, PpiDetail } from "./api.js";

export interface ProjectedAtom {
  x: number;
  y: number;
  depth: number; // for paint order, farthest first
}

export interface Rotation {
  yawDeg: number;
  pitchDeg: number;
}

export function projectPose(pose: Pose, rotation: Rotation): ProjectedAtom[] {
  const yaw = (rotation.yawDeg * Math.PI) / 180;
  const pitch = (rotation.pitchDeg * Math.PI) / 180;
  const cy = Math.cos(yaw);
  const sy = Math.sin(yaw);
  const cp = Math.cos(pitch);
  const sp = Math.sin(pitch);
  return pose.coordinates.map(([x, y, z]) => {
    // rotate about the vertical axis, then the horizontal one, drop depth
    const x1 = cy * x + sy * z;
    const z1 = -sy * x + cy * z;
    const y2 = cp * y - sp * z1;
    const z2 = sp * y + cp * z1;
    return { x: x1, y: y2, depth: z2 };
  });
}

export interface DetailPanelModel {
  targetSymbol: string;
  score: number;
  explanation: string;
  references: { title: string; identifier: string; excerpt: string }[];
  dockingAvailable: boolean;
  dockingNotice: string | null;
  affinity: number | null;
  poses: Pose[];
  bookmarked: boolean;
}

export function buildDetailModel(detail: PpiDetail): DetailPanelModel {
  const docking = detail.docking;
  return {
    targetSymbol: detail.target.symbol,
    score: detail.assessment.score,
    explanation: detail.assessment.explanation,
    // shown exactly as sent; no trimming or rewriting
    references: detail.assessment.references.map((r) => ({ ...r })),
    dockingAvailable: docking !== undefined,
    dockingNotice: docking === undefined ? "docking unavailable" : null,
    affinity: docking ? docking.affinity : null,
    poses: docking ? docking.poses : [],
    bookmarked: detail.bookmarked,
  };
}
