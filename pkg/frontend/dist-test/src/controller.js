/** Session controller: one in-flight mutation at a time, blocked vertices
 * never produce requests, and the view is always rebuilt from the latest
 * service response. */
import { ApiError } from "./api.js";
import { deriveViewState } from "./state.js";
import { renderApp } from "./render.js";
const TOAST_TEXT = {
    "not-simple": "not simple: that curve has self-crossings",
    "not-regular": "not regular: Id - holonomy is singular",
    "budget-exceeded": "expression budget exceeded",
};
export class ExplorerController {
    constructor(client, ui) {
        this.client = client;
        this.ui = ui;
        this.doc = null;
        this.view_ = null;
        this.inflight = false;
    }
    get view() {
        return this.view_;
    }
    get sessionId() {
        return this.doc ? this.doc.id : null;
    }
    show(doc) {
        this.doc = doc;
        this.view_ = deriveViewState(doc.id, doc.state);
        this.ui.setContent(renderApp(this.view_));
    }
    async start(payload) {
        const doc = await this.client.createSession(payload);
        this.show(doc);
    }
    /** Click on quiver vertex `index` (1-based). Blocked or busy clicks are
     * dropped without issuing a request. */
    async clickVertex(index) {
        if (!this.doc || !this.view_) {
            return;
        }
        const vertex = this.view_.vertices.find((v) => v.index === index);
        if (!vertex || !vertex.mutable) {
            return;
        }
        if (this.inflight) {
            this.ui.toast("one mutation at a time");
            return;
        }
        this.inflight = true;
        this.ui.setBusy(true);
        try {
            const doc = await this.client.mutate(this.doc.id, index);
            this.show(doc);
        }
        catch (err) {
            if (err instanceof ApiError && err.status === 409) {
                this.ui.toast(TOAST_TEXT[err.reason] ?? err.reason);
            }
            else {
                this.ui.toast(`request failed, retry: ${String(err)}`);
            }
        }
        finally {
            this.inflight = false;
            this.ui.setBusy(false);
        }
    }
    async clickUndo() {
        if (!this.doc || this.inflight) {
            return;
        }
        this.inflight = true;
        this.ui.setBusy(true);
        try {
            const doc = await this.client.undo(this.doc.id);
            this.show(doc);
        }
        catch (err) {
            if (err instanceof ApiError && err.status === 409) {
                this.ui.toast("nothing to undo");
            }
            else {
                this.ui.toast(`request failed, retry: ${String(err)}`);
            }
        }
        finally {
            this.inflight = false;
            this.ui.setBusy(false);
        }
    }
}
