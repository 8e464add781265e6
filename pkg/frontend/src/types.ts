/** Wire types mirrored from the workbench service. */

export interface QuiverJson {
  arrows: number[][];
  loops: number[];
}

export interface LedgerJson {
  P: number[][];
  s: number[];
}

export interface SeedJson {
  rank: number;
  form: number[][];
  vectors: number[][];
  signing: number[];
}

export interface StateJson {
  kind: "seed" | "config" | "ledger";
  history: number[];
  seed?: SeedJson;
  xvars?: string[];
  reduced_quiver?: QuiverJson;
  quiver?: QuiverJson;
  classes?: number[][];
  ledger?: LedgerJson;
  mutable?: boolean[];
  character?: { a: string; b: string };
}

export interface SessionDoc {
  id: string;
  state: StateJson;
}

export interface ErrorDoc {
  reason: string;
}
