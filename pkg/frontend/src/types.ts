/** Wire types mirrored from the engine's JSON formats. */

export type FactorKind = "ceiling" | "speed";
export type IndexKind = "linear_scaled" | "five_level" | "continuous_index";

export interface EvaluationIndexDoc {
  id: string;
  description: string;
  kind: IndexKind;
  weight: number;
  group: string;
}

export interface ScorecardDoc {
  format: string;
  version: number;
  region: string;
  factor_kind: FactorKind;
  indices: EvaluationIndexDoc[];
  entries: Record<string, number>;
}

export interface RequiredIntensityDoc {
  value: number;
  in_envelope: boolean;
}

export interface GapDoc {
  target_value: number;
  predicted_value: number;
  shortfall: number;
  required_f_p: RequiredIntensityDoc;
  required_f_c: RequiredIntensityDoc | null;
}

export interface CurveParamsDoc {
  c: number;
  p: number;
  t0: number;
}

export type ScenarioName = "baseline" | "policy" | "optimal";

export interface ReportDoc {
  format: string;
  version: number;
  region: string;
  target_kind: string;
  policy_start: number;
  horizon: number;
  anchor_share: number;
  intensity: { f_c: number; f_p: number; source: string };
  bounds: {
    target_kind: string;
    c_base: number;
    c_op: number;
    p_base: number;
    p_op: number;
  };
  params: Record<ScenarioName, CurveParamsDoc>;
  years: number[];
  series: Record<ScenarioName, number[]>;
  shares: Record<ScenarioName, number[]>;
  totals: Record<string, number>;
  baseline_input: Record<string, number>;
  gap: GapDoc | null;
}

export interface CatalogDoc {
  schema_version: number;
  models: Array<{ id: string; input_columns: string[]; target: string | null }>;
  specs: Array<{
    id: string;
    region: string;
    target_kind: string;
    policy_start: number;
    horizon: number;
  }>;
}

export interface FactorResponse {
  schema_version: number;
  factor: number | null;
  violations: string[];
}
