/**
 * Search session: the ordered restriction steps, the live result count
 * after each step, and the current page of summaries. Mirrors the
 * server-side query exactly; removing the last step restores the
 * previous sublist because counts are recorded per prefix.
 */

import { ApiClient, GraphSummary, StepDoc } from "./api.js";

export interface AppliedStep {
  doc: StepDoc;
  label: string;
  /** result count after applying this step (and all before it) */
  count: number;
}

export const PAGE_SIZE = 20;

export class SearchSession {
  steps: AppliedStep[] = [];
  baseCount = 0;
  page: GraphSummary[] = [];
  total = 0;

  constructor(private api: ApiClient) {}

  stepDocs(): StepDoc[] {
    return this.steps.map((s) => s.doc);
  }

  /** Serialize to the POST /api/search payload (round-trips via fromDocs). */
  toDocs(): StepDoc[] {
    return JSON.parse(JSON.stringify(this.stepDocs()));
  }

  async refresh(): Promise<void> {
    const base = await this.api.search([], { offset: 0, limit: 0 });
    this.baseCount = base.total;
    const full = await this.api.search(this.stepDocs(),
                                       { offset: 0, limit: PAGE_SIZE });
    this.total = full.total;
    this.page = full.results;
  }

  async addStep(doc: StepDoc, label: string): Promise<void> {
    const docs = [...this.stepDocs(), doc];
    const resp = await this.api.search(docs, { offset: 0, limit: PAGE_SIZE });
    this.steps.push({ doc, label, count: resp.total });
    this.total = resp.total;
    this.page = resp.results;
  }

  /** Drop the most recent step; the previous count is already recorded. */
  async removeLastStep(): Promise<void> {
    this.steps.pop();
    const resp = await this.api.search(this.stepDocs(),
                                       { offset: 0, limit: PAGE_SIZE });
    this.total = resp.total;
    this.page = resp.results;
  }

  countAfter(index: number): number {
    return index < 0 ? this.baseCount : this.steps[index].count;
  }
}

export function describeStep(doc: StepDoc): string {
  switch (doc.kind) {
    case "keyword":
      return `keyword "${doc.text}"`;
    case "range": {
      const lo = doc.low == null ? "-inf" : fmtBound(doc.low);
      const hi = doc.high == null ? "+inf" : fmtBound(doc.high);
      return `${doc.invariant} in [${lo}, ${hi}]`;
    }
    case "interesting":
      return `interesting for ${doc.invariant}`;
    case "expr":
      return `${doc.polarity === "not_satisfy" ? "does not satisfy" : "satisfies"} ${doc.text}`;
    case "exact":
      return `exact graph ${doc.key ?? doc.graph6 ?? ""}`;
    case "bool":
      return `${doc.invariant} = ${doc.value}`;
  }
}

function fmtBound(b: number | { num: number; den: number }): string {
  if (typeof b === "number") return String(b);
  return b.den === 1 ? String(b.num) : `${b.num}/${b.den}`;
}
