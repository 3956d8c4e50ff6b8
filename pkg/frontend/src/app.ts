/**
 * The catalog explorer: successive restriction-step search with live
 * result counts, graph detail pages, and a drawing editor for
 * submissions. All data comes from the HTTP API; the client computes
 * no invariants of its own.
 */

import { ApiClient, ApiError, DownloadFormat, GraphDetail, InvariantInfo,
         InvariantValueDoc, StepDoc } from "./api.js";
import { GraphEditor, renderEmbedding } from "./editor.js";
import { PAGE_SIZE, SearchSession, describeStep } from "./session.js";

type View = { kind: "search" } | { kind: "detail"; id: number } | { kind: "draw" };

export class App {
  readonly api: ApiClient;
  readonly session: SearchSession;
  private root: HTMLElement;
  private registry: InvariantInfo[] = [];
  private view: View = { kind: "search" };
  lastDuplicateOf: number | null = null;

  constructor(root: HTMLElement, baseUrl: string) {
    this.root = root;
    this.api = new ApiClient(baseUrl);
    this.session = new SearchSession(this.api);
  }

  async start(): Promise<void> {
    this.registry = await this.api.invariants();
    await this.session.refresh();
    this.render();
  }

  async open(view: View): Promise<void> {
    this.view = view;
    this.render();
  }

  // -- rendering helpers ------------------------------------------------------

  private el<K extends keyof HTMLElementTagNameMap>(
    tag: K, attrs: Record<string, string> = {}, text?: string,
  ): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
    if (text !== undefined) node.textContent = text;
    return node;
  }

  private render(): void {
    this.root.textContent = "";
    this.root.appendChild(this.navBar());
    if (this.view.kind === "search") this.root.appendChild(this.searchView());
    else if (this.view.kind === "detail") this.renderDetail(this.view.id);
    else this.root.appendChild(this.drawView());
  }

  private navBar(): HTMLElement {
    const nav = this.el("nav", { class: "topnav" });
    const searchLink = this.el("a", { href: "#", "data-testid": "nav-search" },
                               "search");
    searchLink.onclick = (e) => { e.preventDefault(); this.open({ kind: "search" }); };
    const drawLink = this.el("a", { href: "#", "data-testid": "nav-draw" },
                             "draw a graph");
    drawLink.onclick = (e) => { e.preventDefault(); this.open({ kind: "draw" }); };
    nav.append(searchLink, " | ", drawLink, this.authBox());
    return nav;
  }

  private authBox(): HTMLElement {
    const box = this.el("span", { class: "auth" });
    if (this.api.login) {
      box.append(this.el("span", { "data-testid": "auth-user" },
                         `signed in as ${this.api.login}`));
      return box;
    }
    const input = this.el("input", { placeholder: "login name",
                                     "data-testid": "auth-login" });
    const btn = this.el("button", { "data-testid": "auth-register" }, "register");
    const msg = this.el("span", { class: "auth-msg", "data-testid": "auth-msg" });
    btn.onclick = async () => {
      try {
        await this.api.register(input.value.trim());
        this.render();
      } catch (err) {
        msg.textContent = err instanceof Error ? err.message : String(err);
      }
    };
    box.append(input, btn, msg);
    return box;
  }

  // -- search view -------------------------------------------------------------

  private searchView(): HTMLElement {
    const wrap = this.el("div", { class: "search-view" });
    wrap.appendChild(this.el("h2", {}, "restriction search"));
    wrap.appendChild(this.el(
      "p", { "data-testid": "base-count" },
      `${this.session.baseCount} graphs in the database`));

    wrap.appendChild(this.stepList());
    wrap.appendChild(this.stepBuilder());
    wrap.appendChild(this.downloadRow());
    wrap.appendChild(this.resultList());
    return wrap;
  }

  private stepList(): HTMLElement {
    const list = this.el("ol", { class: "steps", "data-testid": "step-list" });
    this.session.steps.forEach((step, i) => {
      const item = this.el("li", { "data-testid": `step-${i}` });
      item.append(
        this.el("span", {}, step.label),
        this.el("span", { class: "count", "data-testid": `step-count-${i}` },
                ` -> ${step.count} graphs`));
      if (i === this.session.steps.length - 1) {
        const rm = this.el("button", { "data-testid": "remove-step" }, "remove");
        rm.onclick = async () => {
          await this.session.removeLastStep();
          this.render();
        };
        item.appendChild(rm);
      }
      list.appendChild(item);
    });
    return list;
  }

  private stepBuilder(): HTMLElement {
    const box = this.el("div", { class: "builder" });
    const kind = this.el("select", { "data-testid": "step-kind" });
    for (const k of ["keyword", "range", "bool", "interesting", "expr"]) {
      kind.appendChild(this.el("option", { value: k }, k));
    }
    const fields = this.el("span", { "data-testid": "step-fields" });
    const err = this.el("div", { class: "error", "data-testid": "step-error" });

    const invariantSelect = (id: string, kinds: string[]) => {
      const sel = this.el("select", { "data-testid": id });
      for (const inv of this.registry) {
        if (kinds.includes(inv.kind)) {
          sel.appendChild(this.el("option", { value: inv.id }, inv.id));
        }
      }
      return sel;
    };

    const rebuild = () => {
      fields.textContent = "";
      switch (kind.value) {
        case "keyword":
          fields.appendChild(this.el("input", { "data-testid": "f-text",
                                                placeholder: "keyword" }));
          break;
        case "range":
          fields.append(
            invariantSelect("f-invariant", ["RATIONAL"]),
            this.el("input", { "data-testid": "f-low", placeholder: "low" }),
            this.el("input", { "data-testid": "f-high", placeholder: "high" }));
          break;
        case "bool": {
          const val = this.el("select", { "data-testid": "f-value" });
          val.append(this.el("option", { value: "true" }, "true"),
                     this.el("option", { value: "false" }, "false"));
          fields.append(invariantSelect("f-invariant", ["BOOLEAN"]), val);
          break;
        }
        case "interesting":
          fields.appendChild(invariantSelect("f-invariant",
                                             ["RATIONAL", "BOOLEAN"]));
          break;
        case "expr": {
          const pol = this.el("select", { "data-testid": "f-polarity" });
          pol.append(this.el("option", { value: "satisfy" }, "satisfies"),
                     this.el("option", { value: "not_satisfy" },
                             "does not satisfy"));
          fields.append(pol, this.el("input", { "data-testid": "f-text",
                                                placeholder: "mu <= n/2 - 2" }));
          break;
        }
      }
    };
    kind.onchange = rebuild;
    rebuild();

    const add = this.el("button", { "data-testid": "add-step" }, "apply step");
    add.onclick = async () => {
      err.textContent = "";
      const get = (id: string) =>
        (fields.querySelector(`[data-testid="${id}"]`) as
         HTMLInputElement | HTMLSelectElement | null)?.value ?? "";
      let doc: StepDoc;
      try {
        doc = this.buildStep(kind.value, get);
        await this.session.addStep(doc, describeStep(doc));
        this.render();
      } catch (e) {
        err.textContent = e instanceof Error ? e.message : String(e);
      }
    };

    box.append(kind, fields, add, err);
    return box;
  }

  private buildStep(kind: string, get: (id: string) => string): StepDoc {
    switch (kind) {
      case "keyword":
        return { kind: "keyword", text: get("f-text") };
      case "range": {
        const low = get("f-low").trim();
        const high = get("f-high").trim();
        return { kind: "range", invariant: get("f-invariant"),
                 low: low ? parseBound(low) : null,
                 high: high ? parseBound(high) : null };
      }
      case "bool":
        return { kind: "bool", invariant: get("f-invariant"),
                 value: get("f-value") === "true" };
      case "interesting":
        return { kind: "interesting", invariant: get("f-invariant") };
      case "expr":
        return { kind: "expr", text: get("f-text"),
                 polarity: get("f-polarity") as "satisfy" | "not_satisfy" };
      default:
        throw new Error(`unknown step kind ${kind}`);
    }
  }

  private downloadRow(): HTMLElement {
    const row = this.el("div", { class: "downloads" }, "download sublist: ");
    const formats: DownloadFormat[] = ["graph6", "multicode", "edge-text",
                                       "readable"];
    for (const fmt of formats) {
      const btn = this.el("button", { "data-testid": `download-${fmt}` }, fmt);
      btn.onclick = async () => {
        const blob = await this.api.downloadSearch(this.session.toDocs(), fmt);
        const url = URL.createObjectURL(blob);
        const a = this.el("a", { href: url, download: `graphs.${fmt}` });
        a.click();
        URL.revokeObjectURL(url);
      };
      row.appendChild(btn);
    }
    return row;
  }

  private resultList(): HTMLElement {
    const box = this.el("div", { class: "results" });
    box.appendChild(this.el(
      "p", { "data-testid": "result-count" },
      `${this.session.total} matching graphs` +
      (this.session.total > PAGE_SIZE ? ` (showing ${PAGE_SIZE})` : "")));
    const table = this.el("table", { class: "result-table" });
    for (const item of this.session.page) {
      const row = this.el("tr", { "data-testid": `result-${item.id}` });
      const link = this.el("a", { href: "#", "data-testid": `open-${item.id}` },
                           item.name ?? `graph ${item.id}`);
      link.onclick = (e) => {
        e.preventDefault();
        this.open({ kind: "detail", id: item.id });
      };
      const nameCell = this.el("td");
      nameCell.appendChild(link);
      row.append(nameCell,
                 this.el("td", {}, `n=${item.n}`),
                 this.el("td", {}, `m=${item.m}`));
      table.appendChild(row);
    }
    box.appendChild(table);
    return box;
  }

  // -- detail view ---------------------------------------------------------------

  private async renderDetail(id: number): Promise<void> {
    const rec = await this.api.getGraph(id);
    const wrap = this.el("div", { class: "detail-view",
                                  "data-testid": "detail" });
    wrap.appendChild(this.el("h2", { "data-testid": "detail-name" },
                             rec.name ?? `graph ${rec.id}`));
    wrap.appendChild(this.el("p", {},
                             `${rec.n} vertices, ${rec.m} edges; owner ${rec.owner}`));
    if (rec.provenance) {
      wrap.appendChild(this.el("p", { class: "provenance" }, rec.provenance));
    }
    wrap.appendChild(renderEmbedding(rec.embedding, rec.edges));
    if (rec.interesting_for.length) {
      wrap.appendChild(this.el(
        "p", { "data-testid": "interesting" },
        `marked interesting for: ${rec.interesting_for.join(", ")}`));
    }
    wrap.appendChild(this.invariantTable(rec));
    wrap.appendChild(this.commentBlock(rec));
    if (this.api.login === rec.owner) {
      wrap.appendChild(this.editControls(rec));
    }
    this.root.appendChild(wrap);
  }

  private invariantTable(rec: GraphDetail): HTMLElement {
    const table = this.el("table", { class: "invariants",
                                     "data-testid": "invariant-table" });
    for (const inv of this.registry) {
      const value = rec.invariants[inv.id];
      const row = this.el("tr", { "data-testid": `inv-${inv.id}` });
      row.append(this.el("td", {}, inv.display),
                 this.el("td", { "data-testid": `inv-value-${inv.id}` },
                         formatValue(value)));
      table.appendChild(row);
    }
    return table;
  }

  private commentBlock(rec: GraphDetail): HTMLElement {
    const box = this.el("div", { class: "comments" });
    box.appendChild(this.el("h3", {}, "comments"));
    for (const c of rec.comments) {
      box.appendChild(this.el("p", { class: "comment" },
                              `${c.user} (${c.at}): ${c.text}`));
    }
    if (this.api.login) {
      const input = this.el("input", { "data-testid": "comment-text",
                                       placeholder: "add a comment" });
      const btn = this.el("button", { "data-testid": "comment-add" }, "comment");
      btn.onclick = async () => {
        if (!input.value.trim()) return;
        await this.api.addComment(rec.id, input.value);
        this.open({ kind: "detail", id: rec.id });
      };
      box.append(input, btn);
    }
    return box;
  }

  private editControls(rec: GraphDetail): HTMLElement {
    const box = this.el("div", { class: "owner-edit", "data-testid": "owner-edit" });
    const input = this.el("input", { "data-testid": "edit-name",
                                     value: rec.name ?? "" });
    const btn = this.el("button", { "data-testid": "edit-save" }, "rename");
    btn.onclick = async () => {
      await this.api.updateMetadata(rec.id, { name: input.value });
      this.open({ kind: "detail", id: rec.id });
    };
    box.append(this.el("h3", {}, "owner tools"), input, btn);
    return box;
  }

  // -- drawing view ----------------------------------------------------------------

  private drawView(): HTMLElement {
    const wrap = this.el("div", { class: "draw-view" });
    wrap.appendChild(this.el("h2", {}, "draw and submit a graph"));
    wrap.appendChild(this.el(
      "p", {}, "click to add vertices; press one vertex and release on "
               + "another to connect them"));
    const editor = new GraphEditor();
    const status = this.el("p", { "data-testid": "draw-status" },
                           "0 vertices, 0 edges");
    editor.onchange = () => {
      status.textContent = `${editor.state.vertices.length} vertices, ` +
                           `${editor.state.edges.length} edges`;
    };
    const name = this.el("input", { "data-testid": "draw-name",
                                    placeholder: "name (optional)" });
    const submit = this.el("button", { "data-testid": "draw-submit" }, "submit");
    const notice = this.el("div", { class: "notice", "data-testid": "draw-notice" });
    submit.onclick = async () => {
      notice.textContent = "";
      this.lastDuplicateOf = null;
      try {
        const out = await this.api.submitDrawn(editor.state, name.value.trim());
        if (out.created) {
          notice.textContent = `stored as new graph ${out.id} `;
        } else {
          this.lastDuplicateOf = out.id;
          notice.textContent = "already in the database: ";
        }
        const link = this.el("a", { href: "#",
                                    "data-testid": "notice-link" },
                             `graph ${out.id}`);
        link.onclick = (e) => {
          e.preventDefault();
          this.open({ kind: "detail", id: out.id });
        };
        notice.appendChild(link);
      } catch (err) {
        notice.textContent = err instanceof ApiError
          ? `${err.code}: ${err.message}` : String(err);
      }
    };
    const clear = this.el("button", { "data-testid": "draw-clear" }, "clear");
    clear.onclick = () => editor.clear();
    wrap.append(editor.svg, status, name, submit, clear, notice);
    return wrap;
  }
}

export function formatValue(v: InvariantValueDoc | undefined): string {
  if (!v || v.status === "PENDING") return "pending";
  if (v.status === "UNKNOWN") return "unknown";
  if (v.kind === "UNDEFINED") return "undefined";
  if (v.kind === "BOOLEAN") return v.value ? "true" : "false";
  if (v.den === 1) return String(v.num);
  return `${v.num}/${v.den}`;
}

function parseBound(text: string): number | { num: number; den: number } {
  if (/^-?\d+$/.test(text)) return parseInt(text, 10);
  const frac = text.match(/^(-?\d+)\s*\/\s*(\d+)$/);
  if (frac) return { num: parseInt(frac[1], 10), den: parseInt(frac[2], 10) };
  throw new Error(`range bounds must be integers or fractions, got "${text}"`);
}

export async function mountApp(root: HTMLElement, baseUrl: string): Promise<App> {
  const app = new App(root, baseUrl);
  await app.start();
  return app;
}
